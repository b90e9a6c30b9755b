use super::FamilySpec;
use crate::error::{Result, RzfError};
use crate::exact::{singleton_profile, EptValue};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// The harmonic number `H_n`.
pub fn harmonic(n: u64) -> f64 {
    if n <= 1_000_000 {
        return (1..=n).rev().map(|j| 1.0 / j as f64).sum();
    }
    let x = n as f64;
    x.ln() + EULER_GAMMA + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x)
}

/// Expected absorption time of the blue-count chain equivalent to the bidirected
/// complete graph `K_n` from one vertex: with `b` blue, each of the `n - b` white
/// vertices succeeds independently with probability `b / (n - 1)`.
pub fn complete_graph_chain_ept(n: usize) -> Result<EptValue> {
    if n < 2 {
        return Err(RzfError::param("complete graph chain needs n >= 2"));
    }
    let mut t = vec![0.0; n + 1];
    for b in (1..n).rev() {
        let white = n - b;
        let p = b as f64 / (n - 1) as f64;
        if p >= 1.0 {
            t[b] = 1.0 + t[n];
            continue;
        }
        let ratio = p / (1.0 - p);
        let mut pmf = (1.0 - p).powi(white as i32);
        let stay = pmf;
        let mut acc = 0.0;
        for j in 0..white {
            pmf *= (white - j) as f64 / (j + 1) as f64 * ratio;
            acc += pmf * t[b + j + 1];
        }
        t[b] = (1.0 + acc) / (1.0 - stay);
    }
    Ok(EptValue::Finite(t[1]))
}

/// Bounds on the mean of the maximum of `n` independent `Geom(p)` variables:
/// `(H_n / ln(1/(1-p)), 1 + H_n / ln(1/(1-p)))`.
pub fn max_geometric_expectation_bounds(n: u64, p: f64) -> Result<(f64, f64)> {
    if !(p > 0.0 && p < 1.0) {
        return Err(RzfError::param(format!("success probability must lie in (0, 1), got {p}")));
    }
    if n < 1 {
        return Err(RzfError::param("need at least one geometric variable"));
    }
    let low = harmonic(n) / -(-p).ln_1p();
    Ok((low, low + 1.0))
}

/// Explicit upper bound on the time of the bidirected complete k-ary tree of the given
/// depth from its root, obtained by waiting for each layer to fill before the next.
///
/// Layers `1..depth` have vertices with `k + 1` in-neighbors, so each succeeds with
/// probability at least `1/(k+1)` once its parent is blue; the leaf layer finishes in one
/// round once its parents are blue.
pub fn kary_layered_bound(arity: usize, depth: usize) -> f64 {
    if depth == 0 {
        return 0.0;
    }
    let k = arity as f64;
    let rate = (1.0 / k).ln_1p();
    let inner: f64 = (1..depth as u32)
        .map(|j| 1.0 + harmonic((arity as u64).saturating_pow(j)) / rate)
        .sum();
    inner + 1.0
}

/// Exact singleton times from each side of `K_{a,b}`, `a > b`.
///
/// The comparison is empirical evidence only.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureProbe {
    pub a: usize,
    pub b: usize,
    /// Time from a vertex of the larger side.
    pub ept_large_side: f64,
    /// Time from a vertex of the smaller side.
    pub ept_small_side: f64,
    /// Whether the smaller side starts faster on this instance.
    pub holds: bool,
    pub label: &'static str,
}

pub fn bipartite_conjecture_probe(a: usize, b: usize) -> Result<ConjectureProbe> {
    if a <= b || b < 1 {
        return Err(RzfError::param("probe needs a > b >= 1"));
    }
    let g = FamilySpec::CompleteBipartite { a, b }.build()?;
    let profile = singleton_profile(&g)?;
    let ept_large_side = profile[0].as_f64();
    let ept_small_side = profile[a].as_f64();
    Ok(ConjectureProbe {
        a,
        b,
        ept_large_side,
        ept_small_side,
        holds: ept_small_side < ept_large_side,
        label: "empirical",
    })
}
