//! Weighted directed graphs and the structural queries the process depends on.
//!
//! Edges carry nonnegative weights. Zero-weight edges are dropped at construction,
//! so every stored edge is part of the positive subgraph. Self-loops are allowed
//! and count toward the head's total in-weight.

mod blueset;
mod structure;
mod weights;

use std::collections::HashSet;

pub use blueset::{BlueSet, VertexId};
pub use structure::{
    eccentricity, every_cycle_through, find_disjoint_forts, is_finite_ept, is_fort, maximal_fort,
    radius, reachable_set, slowest_completion_round, strongly_connected_components,
};
pub use weights::{is_effectively_unweighted, min_incoming_share, scale_incoming};

use crate::error::{Result, RzfError};

/// An immutable weighted digraph with cached in- and out-adjacency.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    labels: Option<Vec<String>>,
    out_adj: Vec<Vec<(VertexId, f64)>>,
    in_adj: Vec<Vec<(VertexId, f64)>>,
    in_total: Vec<f64>,
}

impl WeightedDigraph {
    /// Builds a graph from `(tail, head, weight)` triples.
    ///
    /// Zero-weight entries are accepted (and checked for duplicates) but not stored.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(RzfError::EmptyGraph);
        }
        let mut seen = HashSet::new();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v, weight) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(RzfError::VertexOutOfRange { vertex: x, n });
                }
            }
            if !weight.is_finite() || weight < 0.0 {
                return Err(RzfError::InvalidWeight { u, v, weight });
            }
            if !seen.insert((u, v)) {
                return Err(RzfError::DuplicateEdge(u, v));
            }
            if weight > 0.0 {
                out_adj[u].push((v, weight));
                in_adj[v].push((u, weight));
            }
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_by_key(|&(x, _)| x);
        }
        let in_total = in_adj.iter().map(|list| list.iter().map(|&(_, w)| w).sum()).collect();
        Ok(WeightedDigraph { n, labels: None, out_adj, in_adj, in_total })
    }

    /// Every edge with unit weight.
    pub fn unweighted(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        Self::new(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    /// Both orientations of every listed pair, unit weight.
    pub fn bidirected(n: usize, pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        Self::unweighted(n, pairs.into_iter().flat_map(|(u, v)| [(u, v), (v, u)]))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(RzfError::param(format!(
                "{} labels given for a graph of order {}",
                labels.len(),
                self.n
            )));
        }
        let unique: HashSet<&String> = labels.iter().collect();
        if unique.len() != labels.len() {
            return Err(RzfError::param("vertex labels must be unique"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of stored (positive-weight) directed edges, self-loops included.
    pub fn edge_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The label of `v`, or its decimal id when the graph is unlabeled.
    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == label),
            None => label.parse().ok().filter(|&v| v < self.n),
        }
    }

    pub fn out_edges(&self, u: VertexId) -> &[(VertexId, f64)] {
        &self.out_adj[u]
    }

    pub fn in_edges(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.in_adj[v]
    }

    /// Total in-weight of `v`, including a self-loop.
    pub fn in_weight(&self, v: VertexId) -> f64 {
        self.in_total[v]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    pub fn out_degree(&self, u: VertexId) -> usize {
        self.out_adj[u].len()
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> f64 {
        self.out_adj[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|i| self.out_adj[u][i].1)
            .unwrap_or(0.0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.weight(u, v) > 0.0
    }

    /// All stored edges ordered by tail, then head.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&(v, w)| (u, v, w)))
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(RzfError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub(crate) fn check_set(&self, set: &BlueSet) -> Result<()> {
        if set.order() != self.n {
            return Err(RzfError::OrderMismatch(set.order(), self.n));
        }
        Ok(())
    }

    /// A copy with a new edge list, keeping labels.
    pub(crate) fn rebuilt(&self, edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>) -> Result<Self> {
        let mut g = WeightedDigraph::new(self.n, edges)?;
        g.labels = self.labels.clone();
        Ok(g)
    }
}

/// The subgraph of positive-weight edges on the same vertex set.
///
/// Construction already elides zero weights, so this is a copy; it is kept as the
/// explicit reduction used by reachability arguments.
pub fn positive_subgraph(g: &WeightedDigraph) -> WeightedDigraph {
    g.rebuilt(g.edges().filter(|&(_, _, w)| w > 0.0))
        .expect("edges of a valid graph rebuild cleanly")
}
