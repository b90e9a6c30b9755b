use super::{VertexId, WeightedDigraph};
use crate::error::{Result, RzfError};

/// Multiplies every weight on an edge into `v` by `lambda`.
pub fn scale_incoming(g: &WeightedDigraph, v: VertexId, lambda: f64) -> Result<WeightedDigraph> {
    g.check_vertex(v)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(RzfError::NonPositiveScale(lambda));
    }
    g.rebuilt(g.edges().map(|(a, b, w)| if b == v { (a, b, w * lambda) } else { (a, b, w) }))
}

/// True iff at every vertex all incoming weights are equal, so the weighted rule
/// reduces to the fraction of blue in-neighbors.
pub fn is_effectively_unweighted(g: &WeightedDigraph) -> bool {
    g.vertices().all(|v| match g.in_edges(v) {
        [] => true,
        [(_, first), rest @ ..] => rest.iter().all(|(_, w)| w == first),
    })
}

/// Smallest share `w_uv / (total in-weight of v)` over all edges, or `None` for an edgeless graph.
///
/// After normalizing every in-weight to one (which leaves the process unchanged),
/// this is the minimum edge weight.
pub fn min_incoming_share(g: &WeightedDigraph) -> Option<f64> {
    g.edges().map(|(_, v, w)| w / g.in_weight(v)).reduce(f64::min)
}
