//! Graph families with canonical numbering, canonical starts and closed-form oracles.
//!
//! Numbering conventions:
//! - paths and cycles: `0..n` left to right (clockwise for cycles);
//! - stars and spiders: center `0`, then leaves, or legs consecutively from the center out;
//! - sun graphs: cycle centers `0..n`, pendant leaf of center `i` at `n + i`;
//! - complete bipartite `K_{a,b}`: side A is `0..a`, side B is `a..a+b`;
//! - k-ary trees: breadth first, children of `v` are `k v + 1 ..= k v + k`;
//! - quadratic construction: `b_1, a_1, b_2, a_2, ..., a_m, b_{m+1}`;
//! - joined paths: hub `0`, then each leg from the hub outward;
//! - edge joins: `G` first, then `H`.

mod analytic;
mod config;
mod ops;

pub use analytic::{
    bipartite_conjecture_probe, complete_graph_chain_ept, harmonic, kary_layered_bound,
    max_geometric_expectation_bounds, ConjectureProbe,
};
pub use config::{parse_config, Config};
pub use ops::{apply_fort_weighting, attach_pendant_sink, attach_pendant_source, edge_join, fort_weighted, join_at_hub};

use crate::error::{Result, RzfError};
use crate::graph::{eccentricity, find_disjoint_forts, BlueSet, VertexId, WeightedDigraph};

/// A family member together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    /// Directed path `0 -> 1 -> ... -> order-1`.
    UniPath { order: usize },
    /// Bidirected path; `forward[i]` weighs `i -> i+1`, `backward[i]` weighs `i+1 -> i`.
    BiPath { forward: Vec<f64>, backward: Vec<f64> },
    UniCycle { order: usize },
    /// Bidirected cycle with clockwise weight `cw`, counterclockwise weight `ccw`,
    /// started from the arc `0..arc`.
    BiCycle { order: usize, cw: f64, ccw: f64, arc: usize },
    /// Unit-weight bidirected star.
    Star { leaves: usize },
    /// Bidirected star; `a[i]` weighs leaf-to-center, `b[i]` center-to-leaf, started
    /// from the listed leaves (0-based leaf indices).
    WeightedStar { a: Vec<f64>, b: Vec<f64>, start_leaves: Vec<usize> },
    /// Balanced bidirected spider with `legs` legs of `length` vertices each.
    Spider { legs: usize, length: usize },
    /// Bidirected sun: a cycle of `centers` vertices, each with one pendant leaf.
    Sun { centers: usize },
    /// Bidirected complete graph.
    Complete { order: usize },
    /// Bidirected complete bipartite graph.
    CompleteBipartite { a: usize, b: usize },
    /// Complete k-ary tree of the given depth, edges directed away from the root.
    KaryTreeUni { arity: usize, depth: usize },
    /// Complete k-ary tree of the given depth, bidirected.
    KaryTreeBi { arity: usize, depth: usize },
    /// One parent per non-root vertex, with the weight of the parent edge.
    Arborescence { parents: Vec<Option<VertexId>>, weights: Vec<f64> },
    QuadConstruction { m: usize },
    MaxdegConstruction { order: usize, d: usize },
    WeightConstruction { order: usize, w: f64 },
    /// Two triangles joined by a bridge, with the fort avoiding the start down-weighted.
    FortWeighting { k: u64 },
    /// Hub with out-edges to bidirected legs; leg `i` has `lengths[i]` edges.
    JoinPaths { lengths: Vec<usize> },
    EdgeJoinSharp { m: usize, n: usize, d: usize },
    WeightedEdgeJoinSharp { m: usize, n: usize, d: f64, w: f64 },
}

/// What is known in closed form about the time from a start.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Oracle {
    Exact(f64),
    LowerBound(f64),
    UpperBound(f64),
    Band { low: f64, high: f64 },
}

impl Oracle {
    /// Whether `value` is consistent with the oracle within `tol`.
    pub fn admits(&self, value: f64, tol: f64) -> bool {
        match *self {
            Oracle::Exact(x) => (value - x).abs() <= tol,
            Oracle::LowerBound(x) => value >= x - tol,
            Oracle::UpperBound(x) => value <= x + tol,
            Oracle::Band { low, high } => value >= low - tol && value <= high + tol,
        }
    }

    pub fn exact(&self) -> Option<f64> {
        match *self {
            Oracle::Exact(x) => Some(x),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Oracle::Exact(_) => "exact",
            Oracle::LowerBound(_) => "lower_bound",
            Oracle::UpperBound(_) => "upper_bound",
            Oracle::Band { .. } => "asymptotic_band",
        }
    }
}

/// Which start an oracle refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartRole {
    /// The family's canonical start.
    Canonical,
    /// Center of a star or spider.
    Center,
    /// A single leaf of a star (0-based leaf index).
    Leaf(usize),
    /// The right endpoint of a bidirected path.
    FarEndpoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedGraph {
    pub graph: WeightedDigraph,
    pub start: BlueSet,
    pub oracle: Option<Oracle>,
}

fn invalid(msg: impl Into<String>) -> RzfError {
    RzfError::param(msg)
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be a positive finite weight, got {x}")))
    }
}

impl FamilySpec {
    /// Unit-weight bidirected path on `order` vertices.
    pub fn bipath(order: usize) -> Self {
        let e = order.saturating_sub(1);
        FamilySpec::BiPath { forward: vec![1.0; e], backward: vec![1.0; e] }
    }

    /// Unit-weight bidirected cycle started from one vertex.
    pub fn bicycle(order: usize) -> Self {
        FamilySpec::BiCycle { order, cw: 1.0, ccw: 1.0, arc: 1 }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::UniPath { .. } => "unipath",
            FamilySpec::BiPath { .. } => "bipath",
            FamilySpec::UniCycle { .. } => "unicycle",
            FamilySpec::BiCycle { .. } => "bicycle",
            FamilySpec::Star { .. } => "star",
            FamilySpec::WeightedStar { .. } => "weighted_star",
            FamilySpec::Spider { .. } => "spider",
            FamilySpec::Sun { .. } => "sun",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteBipartite { .. } => "complete_bipartite",
            FamilySpec::KaryTreeUni { .. } => "kary_tree_uni",
            FamilySpec::KaryTreeBi { .. } => "kary_tree_bi",
            FamilySpec::Arborescence { .. } => "arborescence",
            FamilySpec::QuadConstruction { .. } => "quad_construction",
            FamilySpec::MaxdegConstruction { .. } => "maxdeg_construction",
            FamilySpec::WeightConstruction { .. } => "weight_construction",
            FamilySpec::FortWeighting { .. } => "fort_weighting",
            FamilySpec::JoinPaths { .. } => "join_paths",
            FamilySpec::EdgeJoinSharp { .. } => "edge_join_sharp",
            FamilySpec::WeightedEdgeJoinSharp { .. } => "weighted_edge_join_sharp",
        }
    }

    /// Builds the graph alone, validating parameters.
    pub fn build(&self) -> Result<WeightedDigraph> {
        match self {
            FamilySpec::UniPath { order } => {
                let n = *order;
                if n < 1 {
                    return Err(invalid("path order must be at least 1"));
                }
                WeightedDigraph::unweighted(n, (1..n).map(|i| (i - 1, i)))
            }
            FamilySpec::BiPath { forward, backward } => {
                if forward.len() != backward.len() {
                    return Err(invalid("path needs as many backward weights as forward weights"));
                }
                for &x in forward.iter().chain(backward) {
                    positive("path weight", x)?;
                }
                let n = forward.len() + 1;
                let edges = (0..n - 1).flat_map(|i| [(i, i + 1, forward[i]), (i + 1, i, backward[i])]);
                WeightedDigraph::new(n, edges)
            }
            FamilySpec::UniCycle { order } => {
                let n = *order;
                if n < 2 {
                    return Err(invalid("directed cycle needs at least 2 vertices"));
                }
                WeightedDigraph::unweighted(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            FamilySpec::BiCycle { order, cw, ccw, arc } => {
                let n = *order;
                if n < 3 {
                    return Err(invalid("bidirected cycle needs at least 3 vertices"));
                }
                positive("clockwise weight p", *cw)?;
                positive("counterclockwise weight q", *ccw)?;
                if *arc < 1 || *arc > n {
                    return Err(invalid(format!("initial arc must have between 1 and {n} vertices")));
                }
                WeightedDigraph::new(n, (0..n).flat_map(|i| [(i, (i + 1) % n, *cw), ((i + 1) % n, i, *ccw)]))
            }
            FamilySpec::Star { leaves } => {
                if *leaves < 1 {
                    return Err(invalid("star needs at least one leaf"));
                }
                WeightedDigraph::bidirected(leaves + 1, (1..=*leaves).map(|l| (0, l)))
            }
            FamilySpec::WeightedStar { a, b, start_leaves } => {
                let m = a.len();
                if m < 1 || b.len() != m {
                    return Err(invalid("weighted star needs matching nonempty weight lists a and b"));
                }
                for &x in a.iter().chain(b) {
                    positive("star weight", x)?;
                }
                if start_leaves.is_empty() {
                    return Err(invalid("weighted star start must be a nonempty set of leaves"));
                }
                if let Some(&bad) = start_leaves.iter().find(|&&l| l >= m) {
                    return Err(invalid(format!("start leaf {bad} out of range for {m} leaves")));
                }
                WeightedDigraph::new(m + 1, (0..m).flat_map(|i| [(i + 1, 0, a[i]), (0, i + 1, b[i])]))
            }
            FamilySpec::Spider { legs, length } => {
                if *legs < 2 {
                    return Err(invalid("spider needs k > 1 legs"));
                }
                if *length < 1 {
                    return Err(invalid("spider legs need at least one vertex"));
                }
                let (k, n) = (*legs, *length);
                let pairs = (0..k).flat_map(|i| {
                    let first = 1 + i * n;
                    std::iter::once((0, first)).chain((1..n).map(move |j| (first + j - 1, first + j)))
                });
                WeightedDigraph::bidirected(1 + k * n, pairs)
            }
            FamilySpec::Sun { centers } => {
                let n = *centers;
                if n < 3 {
                    return Err(invalid("sun graph needs at least 3 centers"));
                }
                let pairs = (0..n).flat_map(|i| [(i, (i + 1) % n), (i, n + i)]);
                WeightedDigraph::bidirected(2 * n, pairs)
            }
            FamilySpec::Complete { order } => {
                let n = *order;
                if n < 2 {
                    return Err(invalid("complete graph needs at least 2 vertices"));
                }
                WeightedDigraph::bidirected(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            }
            FamilySpec::CompleteBipartite { a, b } => {
                if *a < 1 || *b < 1 {
                    return Err(invalid("complete bipartite sides must be nonempty"));
                }
                let (a, b) = (*a, *b);
                WeightedDigraph::bidirected(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
            }
            FamilySpec::KaryTreeUni { arity, depth } | FamilySpec::KaryTreeBi { arity, depth } => {
                if *arity < 1 {
                    return Err(invalid("tree arity must be at least 1"));
                }
                let n = kary_order(*arity, *depth)?;
                let tree = (1..n).map(|v| ((v - 1) / arity, v));
                if matches!(self, FamilySpec::KaryTreeUni { .. }) {
                    WeightedDigraph::unweighted(n, tree)
                } else {
                    WeightedDigraph::bidirected(n, tree)
                }
            }
            FamilySpec::Arborescence { parents, weights } => {
                arborescence_root(parents)?;
                if weights.len() != parents.len() {
                    return Err(invalid("arborescence needs one weight per vertex"));
                }
                let mut edges = Vec::new();
                for (v, p) in parents.iter().enumerate() {
                    if let Some(p) = *p {
                        positive("parent edge weight", weights[v])?;
                        edges.push((p, v, weights[v]));
                    }
                }
                WeightedDigraph::new(parents.len(), edges)
            }
            FamilySpec::QuadConstruction { m } => {
                let m = *m;
                if m < 1 {
                    return Err(invalid("quadratic construction needs m >= 1"));
                }
                let b = |i: usize| 2 * (i - 1);
                let a = |i: usize| 2 * i - 1;
                let mut edges = Vec::new();
                for i in 1..=m + 1 {
                    for j in 1..=i.min(m) {
                        edges.push((b(i), a(j)));
                    }
                }
                edges.extend((1..=m).map(|i| (a(i), b(i + 1))));
                WeightedDigraph::unweighted(2 * m + 1, edges)
            }
            FamilySpec::MaxdegConstruction { order, d } => {
                let (n, d) = (*order, *d);
                if d < 1 || n < d + 1 {
                    return Err(invalid("max-indegree construction needs 1 <= d < n"));
                }
                let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
                for j in 1..d {
                    edges.extend((0..n - j).map(|i| (i + j, i)));
                }
                WeightedDigraph::unweighted(n, edges)
            }
            FamilySpec::WeightConstruction { order, w } => {
                let (n, w) = (*order, *w);
                if n < 2 {
                    return Err(invalid("weight construction needs at least 2 vertices"));
                }
                if !(w > 0.0 && (w <= 0.5 || w == 1.0)) {
                    return Err(invalid("minimum weight w must lie in (0, 1/2] or equal 1"));
                }
                let mut edges = Vec::new();
                for i in 0..n - 1 {
                    let last = i == n - 2;
                    edges.push((i, i + 1, if last { 1.0 } else { w }));
                    if i >= 1 {
                        edges.push((i + 1, i, 1.0 - w));
                    }
                }
                WeightedDigraph::new(n, edges)
            }
            FamilySpec::FortWeighting { k } => {
                if *k < 1 {
                    return Err(invalid("fort weighting target k must be positive"));
                }
                let base = two_triangles();
                fort_weighted(&base, &BlueSet::singleton(6, 0)?, *k)
            }
            FamilySpec::JoinPaths { lengths } => {
                if lengths.is_empty() || lengths.contains(&0) {
                    return Err(invalid("joined paths need at least one leg, each with at least one edge"));
                }
                let legs: Vec<WeightedDigraph> =
                    lengths.iter().map(|&l| FamilySpec::bipath(l + 1).build()).collect::<Result<_>>()?;
                let entries = vec![0; legs.len()];
                Ok(join_at_hub(&legs, &entries, 1.0)?.0)
            }
            FamilySpec::EdgeJoinSharp { m, n, d } => {
                let (m, n, d) = (*m, *n, *d);
                if m < 1 || n <= d {
                    return Err(invalid("sharp edge join needs m >= 1 and n > d"));
                }
                let g = FamilySpec::UniPath { order: m + 1 }.build()?;
                let mut h_edges: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, i + 1, 1.0)).collect();
                h_edges.extend((n + 1 - d..=n).map(|r| (r, 0, 1.0)));
                let h = WeightedDigraph::new(n + 1, h_edges)?;
                edge_join(&g, &h, m, 0, 1.0)
            }
            FamilySpec::WeightedEdgeJoinSharp { m, n, d, w } => {
                let (m, n) = (*m, *n);
                if m < 1 || n < 1 {
                    return Err(invalid("weighted sharp edge join needs m, n > 0"));
                }
                positive("in-weight d", *d)?;
                positive("joining edge weight w", *w)?;
                let g = FamilySpec::UniPath { order: m + 1 }.build()?;
                let mut h_edges: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, i + 1, 1.0)).collect();
                h_edges.push((1, 0, *d));
                let h = WeightedDigraph::new(n + 1, h_edges)?;
                edge_join(&g, &h, m, 0, *w)
            }
        }
    }
}

fn kary_order(arity: usize, depth: usize) -> Result<usize> {
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=depth {
        total = total.checked_add(layer).ok_or_else(|| invalid("tree too large"))?;
        layer = layer.checked_mul(arity).ok_or_else(|| invalid("tree too large"))?;
    }
    if total > 1 << 26 {
        return Err(invalid("tree too large"));
    }
    Ok(total)
}

fn arborescence_root(parents: &[Option<VertexId>]) -> Result<VertexId> {
    let n = parents.len();
    let roots: Vec<usize> = (0..n).filter(|&v| parents[v].is_none()).collect();
    let [root] = roots[..] else {
        return Err(invalid("arborescence needs exactly one root with indegree 0"));
    };
    for (v, p) in parents.iter().enumerate() {
        if let Some(p) = *p {
            if p >= n || p == v {
                return Err(invalid(format!("vertex {v} has an invalid parent")));
            }
        }
    }
    // every vertex must reach the root by following parents
    for v in 0..n {
        let mut x = v;
        for _ in 0..n {
            match parents[x] {
                Some(p) => x = p,
                None => break,
            }
        }
        if x != root {
            return Err(invalid("every vertex must be reachable from the root"));
        }
    }
    Ok(root)
}

/// Two bidirected triangles `{0,1,2}` and `{3,4,5}` joined by the bridge `2 - 3`.
pub fn two_triangles() -> WeightedDigraph {
    WeightedDigraph::bidirected(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
        .expect("fixed fixture is valid")
}

/// The center waits on one leaf out of `leaves`, then the rest follow in one round.
fn star_leaf_ept(leaves: usize) -> f64 {
    leaves as f64 + if leaves > 1 { 1.0 } else { 0.0 }
}

fn set(n: usize, vs: impl IntoIterator<Item = VertexId>) -> Result<BlueSet> {
    BlueSet::from_vertices(n, vs)
}

/// Start set and oracle for a spec and a start role.
fn resolve(spec: &FamilySpec, g: &WeightedDigraph, role: StartRole) -> Result<(BlueSet, Option<Oracle>)> {
    let n = g.order();
    let unsupported = || invalid(format!("start role {role:?} is not supported for {}", spec.kind()));
    use StartRole::*;
    Ok(match (spec, role) {
        (FamilySpec::UniPath { order }, Canonical) => (set(n, [0])?, Some(Oracle::Exact((order - 1) as f64))),
        (FamilySpec::BiPath { forward, backward }, Canonical | FarEndpoint) => {
            let left = role == Canonical;
            let inner: f64 = (1..n.saturating_sub(1))
                .map(|i| {
                    let (l, r) = (forward[i - 1], backward[i]);
                    if left { (l + r) / l } else { (l + r) / r }
                })
                .sum();
            let value = if n == 1 { 0.0 } else { inner + 1.0 };
            (set(n, [if left { 0 } else { n - 1 }])?, Some(Oracle::Exact(value)))
        }
        (FamilySpec::UniCycle { order }, Canonical) => (set(n, [0])?, Some(Oracle::Exact((order - 1) as f64))),
        (FamilySpec::BiCycle { order, arc, .. }, Canonical) => {
            (set(n, 0..*arc)?, Some(Oracle::Exact((order - arc) as f64)))
        }
        (FamilySpec::Star { leaves }, Canonical | Leaf(0)) => (set(n, [1])?, Some(Oracle::Exact(star_leaf_ept(*leaves)))),
        (FamilySpec::Star { leaves }, Leaf(j)) if j < *leaves => {
            (set(n, [j + 1])?, Some(Oracle::Exact(star_leaf_ept(*leaves))))
        }
        (FamilySpec::Star { .. }, Center) => (set(n, [0])?, Some(Oracle::Exact(1.0))),
        (FamilySpec::WeightedStar { a, start_leaves, .. }, Canonical) => {
            let chosen: f64 = start_leaves.iter().map(|&l| a[l]).sum();
            let mut distinct = start_leaves.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let rest = if distinct.len() < a.len() { 1.0 } else { 0.0 };
            let value = rest + a.iter().sum::<f64>() / chosen;
            (set(n, start_leaves.iter().map(|&l| l + 1))?, Some(Oracle::Exact(value)))
        }
        (FamilySpec::WeightedStar { a, .. }, Leaf(j)) if j < a.len() => {
            let rest = if a.len() > 1 { 1.0 } else { 0.0 };
            (set(n, [j + 1])?, Some(Oracle::Exact(rest + a.iter().sum::<f64>() / a[j])))
        }
        (FamilySpec::WeightedStar { .. }, Center) => (set(n, [0])?, Some(Oracle::Exact(1.0))),
        (FamilySpec::Spider { legs, length }, Canonical | Center) => {
            let low = 2.0 * *length as f64 - 1.0;
            let high = low + 10.0 * ((legs * length) as f64).sqrt();
            (set(n, [0])?, Some(Oracle::Band { low, high }))
        }
        (FamilySpec::Sun { centers }, Canonical | Center) => {
            (set(n, [0])?, Some(Oracle::Exact(1.0 + 1.5 * (*centers as f64 - 1.0))))
        }
        (FamilySpec::Complete { order }, Canonical) => {
            (set(n, [0])?, complete_graph_chain_ept(*order)?.finite().map(Oracle::Exact))
        }
        (FamilySpec::CompleteBipartite { .. }, Canonical) => (set(n, [0])?, None),
        (FamilySpec::KaryTreeUni { depth, .. }, Canonical) => (set(n, [0])?, Some(Oracle::Exact(*depth as f64))),
        (FamilySpec::KaryTreeBi { arity, depth }, Canonical) => {
            (set(n, [0])?, Some(Oracle::UpperBound(kary_layered_bound(*arity, *depth))))
        }
        (FamilySpec::Arborescence { parents, .. }, Canonical) => {
            let root = arborescence_root(parents)?;
            let ecc = eccentricity(g, root)?.expect("arborescence is reachable from its root");
            (set(n, [root])?, Some(Oracle::Exact(ecc as f64)))
        }
        (FamilySpec::QuadConstruction { m }, Canonical) => {
            let value = *m as f64 + (1..=*m).map(|i| (m + 2 - i) as f64).sum::<f64>();
            (set(n, [0])?, Some(Oracle::Exact(value)))
        }
        (FamilySpec::MaxdegConstruction { order, d }, Canonical) => {
            let (n_, d) = (*order as f64, *d as f64);
            (set(n, [0])?, Some(Oracle::Exact(d * n_ - d * (d + 1.0) / 2.0)))
        }
        (FamilySpec::WeightConstruction { order, w }, Canonical) => {
            (set(n, [0])?, Some(Oracle::Exact(1.0 + (*order as f64 - 2.0) / w)))
        }
        (FamilySpec::FortWeighting { k }, Canonical) => (set(n, [0])?, Some(Oracle::LowerBound(*k as f64))),
        (FamilySpec::JoinPaths { lengths }, Canonical) => {
            let longest = *lengths.iter().max().expect("validated nonempty") as f64;
            let low = 2.0 * longest;
            (set(n, [0])?, Some(Oracle::Band { low, high: low + 10.0 * longest.sqrt() }))
        }
        (FamilySpec::EdgeJoinSharp { m, n: h, d }, Canonical) => {
            (set(n, [0])?, Some(Oracle::Exact((m + d + 1 + h) as f64)))
        }
        (FamilySpec::WeightedEdgeJoinSharp { m, n: h, d, w }, Canonical) => {
            (set(n, [0])?, Some(Oracle::Exact(*m as f64 + (d + w) / w + *h as f64)))
        }
        _ => return Err(unsupported()),
    })
}

/// Builds the graph with its canonical start and oracle.
pub fn generate(spec: &FamilySpec) -> Result<GeneratedGraph> {
    generate_for(spec, StartRole::Canonical)
}

/// Builds the graph with the start and oracle for `role`.
pub fn generate_for(spec: &FamilySpec, role: StartRole) -> Result<GeneratedGraph> {
    let graph = spec.build()?;
    let (start, oracle) = resolve(spec, &graph, role)?;
    Ok(GeneratedGraph { graph, start, oracle })
}

/// The closed-form oracle for `role`, or an error when the family has none for it.
pub fn oracle_ept(spec: &FamilySpec, role: StartRole) -> Result<Oracle> {
    generate_for(spec, role)?
        .oracle
        .ok_or_else(|| invalid(format!("{} has no closed-form oracle", spec.kind())))
}

/// Disjoint forts of the two-triangle fixture, exposed for checks.
pub fn two_triangle_forts() -> Option<(BlueSet, BlueSet)> {
    find_disjoint_forts(&two_triangles())
}
