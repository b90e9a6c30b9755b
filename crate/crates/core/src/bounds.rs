//! Closed-form extremal bounds and structural predicates, for cross-checking computed times.

use crate::error::{Result, RzfError};
use crate::exact::EptValue;
use crate::graph::{
    eccentricity, every_cycle_through, is_effectively_unweighted, reachable_set, slowest_completion_round, BlueSet,
    VertexId, WeightedDigraph,
};

/// Absolute tolerance for comparisons against a bound.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Upper,
    Lower,
    EqualityCharacterization,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: EptValue,
    /// Outcome of [`BoundReport::check`], when a computed time has been compared.
    pub satisfied: Option<bool>,
}

impl BoundReport {
    fn new(name: &'static str, kind: BoundKind, value: EptValue) -> Self {
        BoundReport { name, kind, value, satisfied: None }
    }

    /// Compares a computed time against the bound at tolerance [`BOUND_TOL`].
    pub fn check(mut self, ept: EptValue) -> Self {
        let (x, b) = (ept.as_f64(), self.value.as_f64());
        let ok = match self.kind {
            BoundKind::Upper => x <= b + BOUND_TOL || (x.is_infinite() && b.is_infinite()),
            BoundKind::Lower => x >= b - BOUND_TOL || (x.is_infinite() && b.is_infinite()),
            BoundKind::EqualityCharacterization => x == b || (x - b).abs() <= BOUND_TOL,
        };
        self.satisfied = Some(ok);
        self
    }
}

/// `m - (minimum indegree)`, an upper bound on every finite time of an unweighted graph.
pub fn edge_bound(g: &WeightedDigraph, v: VertexId) -> Result<BoundReport> {
    g.check_vertex(v)?;
    if !is_effectively_unweighted(g) {
        return Err(RzfError::WeightedInput("the edge bound holds for unweighted graphs".into()));
    }
    let min_in = g.vertices().map(|x| g.in_degree(x)).min().unwrap_or(0);
    let value = (g.edge_count() - min_in) as f64;
    Ok(BoundReport::new("edge_bound", BoundKind::Upper, EptValue::Finite(value)))
}

/// `d n - d(d+1)/2`, the largest minimum time over graphs of order `n` with indegree at most `d`.
pub fn degree_bound(n: usize, d: usize) -> f64 {
    let (n, d) = (n as f64, d as f64);
    d * n - d * (d + 1.0) / 2.0
}

/// Eccentricity lower bound together with the structural test for equality.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusReport {
    pub bound: BoundReport,
    /// Every vertex reachable from `v` and every directed cycle through `v`. Necessary for
    /// equality but not sufficient: shortcuts can also make the process slower.
    pub structural_equality: bool,
    /// The slowest realization finishes by the eccentricity, which is exactly when the
    /// time equals the eccentricity.
    pub sharp_equality: bool,
    /// Whether the supplied time equals the eccentricity, when a time was supplied.
    pub observed_equality: Option<bool>,
}

impl RadiusReport {
    /// True when no time was supplied or the observation agrees with `sharp_equality`.
    pub fn consistent(&self) -> bool {
        self.observed_equality.is_none_or(|o| o == self.sharp_equality)
    }
}

pub fn radius_bound_and_equality(g: &WeightedDigraph, v: VertexId, ept: Option<EptValue>) -> Result<RadiusReport> {
    g.check_vertex(v)?;
    let ecc = eccentricity(g, v)?;
    let value = ecc.map_or(EptValue::Infinite, |e| EptValue::Finite(e as f64));
    let reach_all = reachable_set(g, &BlueSet::singleton(g.order(), v)?)?.is_full();
    let structural_equality = reach_all && every_cycle_through(g, v)?;
    let slowest = slowest_completion_round(g, &BlueSet::singleton(g.order(), v)?)?;
    let sharp_equality = reach_all && slowest.is_some() && slowest == ecc;
    let mut bound = BoundReport::new("radius_bound", BoundKind::Lower, value);
    let mut observed_equality = None;
    if let Some(e) = ept {
        bound = bound.check(e);
        observed_equality = Some(value.is_finite() && e.is_finite() && (e.as_f64() - value.as_f64()).abs() <= BOUND_TOL);
    }
    Ok(RadiusReport { bound, structural_equality, sharp_equality, observed_equality })
}

/// `1 + (n - 2) / w` for graphs whose in-weights are normalized to one and whose positive
/// weights are all at least `w`.
pub fn weight_bound(n: usize, w: f64) -> Result<f64> {
    if n < 2 {
        return Err(RzfError::param("weight bound needs n >= 2"));
    }
    if !(w > 0.0 && w.is_finite()) {
        return Err(RzfError::param("minimum weight must be positive"));
    }
    Ok(1.0 + (n as f64 - 2.0) / w)
}

fn check_edge_weight(w: f64) -> Result<()> {
    if w > 0.0 && w.is_finite() {
        Ok(())
    } else {
        Err(RzfError::param(format!("joining edge weight must be positive, got {w}")))
    }
}

/// Time from a pendant blue source whose edge of weight `w` enters a vertex of in-weight
/// `d_in`: `(d_in + w) / w + inner`.
pub fn pendant_source_formula(inner_ept: f64, d_in: f64, w: f64) -> Result<f64> {
    check_edge_weight(w)?;
    if d_in < 0.0 {
        return Err(RzfError::param("in-weight must be nonnegative"));
    }
    Ok((d_in + w) / w + inner_ept)
}

/// Upper bound for a hub joined to `m` components:
/// `max ept_i + r + sqrt(m/2 (r^2 - r)) + sqrt(sum Var_i / 2)`, `r` the largest entry indegree.
pub fn join_upper_bound(epts: &[f64], vars: &[f64], indegrees: &[f64]) -> Result<f64> {
    if epts.is_empty() || epts.len() != vars.len() || epts.len() != indegrees.len() {
        return Err(RzfError::param("join bound needs equal-length nonempty lists"));
    }
    let m = epts.len() as f64;
    let r = indegrees.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let top = epts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = (m / 2.0 * (r * r - r)).max(0.0).sqrt();
    Ok(top + r + spread + (vars.iter().sum::<f64>() / 2.0).sqrt())
}

/// `(d_in + w) / w + ept_G + ept_H` for one edge of weight `w` from `G` into a vertex of
/// `H` with in-weight `d_in`.
pub fn edge_join_bound(ept_g: f64, ept_h: f64, d_in: f64, w: f64) -> Result<f64> {
    pendant_source_formula(ept_g + ept_h, d_in, w)
}
