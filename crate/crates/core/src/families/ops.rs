use crate::error::{Result, RzfError};
use crate::graph::{find_disjoint_forts, BlueSet, VertexId, WeightedDigraph};

fn shifted(g: &WeightedDigraph, by: usize) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
    g.edges().map(move |(u, v, w)| (u + by, v + by, w))
}

/// Adds a vertex `b = n` with a single out-edge `b -> v` of weight `w`.
pub fn attach_pendant_source(g: &WeightedDigraph, v: VertexId, w: f64) -> Result<(WeightedDigraph, VertexId)> {
    g.check_vertex(v)?;
    if !(w > 0.0 && w.is_finite()) {
        return Err(RzfError::param("pendant edge weight must be positive"));
    }
    let b = g.order();
    let graph = WeightedDigraph::new(b + 1, g.edges().chain([(b, v, w)]))?;
    Ok((graph, b))
}

/// Adds a vertex `n` with a single unit in-edge from `u` and no out-edges.
pub fn attach_pendant_sink(g: &WeightedDigraph, u: VertexId) -> Result<(WeightedDigraph, VertexId)> {
    g.check_vertex(u)?;
    let s = g.order();
    let graph = WeightedDigraph::new(s + 1, g.edges().chain([(u, s, 1.0)]))?;
    Ok((graph, s))
}

/// Disjoint union of `graphs` behind a new hub `0` with an edge of weight `w` to each
/// listed entry vertex. Component `i` is shifted past the hub and earlier components.
pub fn join_at_hub(graphs: &[WeightedDigraph], entries: &[VertexId], w: f64) -> Result<(WeightedDigraph, VertexId)> {
    if graphs.is_empty() || graphs.len() != entries.len() {
        return Err(RzfError::param("join needs one entry vertex per component"));
    }
    let mut edges = Vec::new();
    let mut offset = 1;
    for (g, &e) in graphs.iter().zip(entries) {
        g.check_vertex(e)?;
        edges.push((0, e + offset, w));
        edges.extend(shifted(g, offset));
        offset += g.order();
    }
    Ok((WeightedDigraph::new(offset, edges)?, 0))
}

/// `G` and `H` side by side (H shifted by `|G|`) plus an edge `u -> v` of weight `w`.
pub fn edge_join(g: &WeightedDigraph, h: &WeightedDigraph, u: VertexId, v: VertexId, w: f64) -> Result<WeightedDigraph> {
    g.check_vertex(u)?;
    h.check_vertex(v)?;
    let off = g.order();
    WeightedDigraph::new(off + h.order(), g.edges().chain(shifted(h, off)).chain([(u, v + off, w)]))
}

/// Weight `eps` on every edge entering `fort` from outside, weight 1 elsewhere.
pub fn apply_fort_weighting(g: &WeightedDigraph, fort: &BlueSet, eps: f64) -> Result<WeightedDigraph> {
    g.check_set(fort)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(RzfError::param("fort entry weight must be positive"));
    }
    g.rebuilt(g.edges().map(|(u, v, _)| {
        let entering = !fort.contains(u) && fort.contains(v);
        (u, v, if entering { eps } else { 1.0 })
    }))
}

/// Down-weights entry into a fort avoiding `start` so that the time exceeds `k`.
///
/// Uses `eps = 1 / (2 k n^2)`; fails when no disjoint pair of forts is found.
pub fn fort_weighted(g: &WeightedDigraph, start: &BlueSet, k: u64) -> Result<WeightedDigraph> {
    g.check_set(start)?;
    let (f1, f2) = find_disjoint_forts(g).ok_or_else(|| RzfError::param("no pair of disjoint forts found"))?;
    let fort = if f1.is_disjoint(start) {
        f1
    } else if f2.is_disjoint(start) {
        f2
    } else {
        return Err(RzfError::param("start meets both forts"));
    };
    let n = g.order() as f64;
    apply_fort_weighting(g, &fort, 1.0 / (2.0 * k as f64 * n * n))
}
