//! Exhaustive and random digraph sources for sweeps, plus canonical forms up to isomorphism.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, RzfError};
use crate::graph::{VertexId, WeightedDigraph};

fn slots(n: usize, loops: bool) -> Vec<(VertexId, VertexId)> {
    (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| loops || u != v).collect()
}

/// Every labeled unit-weight digraph of order `n` (with or without self-loops).
///
/// There are `2^(n(n-1))` loopless graphs and `2^(n^2)` with loops; at most 25 edge
/// slots are supported (loopless `n <= 5`, looped `n <= 5`).
pub fn all_digraphs(n: usize, loops: bool) -> Result<impl Iterator<Item = WeightedDigraph>> {
    let slots = slots(n, loops);
    if n == 0 || slots.len() > 25 {
        return Err(RzfError::param(format!(
            "exhaustive enumeration supports at most 25 edge slots, got {} for n = {n}",
            slots.len()
        )));
    }
    let total = 1u64 << slots.len();
    Ok((0..total).map(move |mask| {
        let edges = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        WeightedDigraph::unweighted(n, edges).expect("enumerated edges are valid")
    }))
}

/// Random loopless digraph with edge probability `p`; weights uniform in `[0.1, 2)` when
/// `weighted`, else 1.
pub fn random_digraph(n: usize, p: f64, weighted: bool, seed: u64) -> Result<WeightedDigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for (u, v) in slots(n, false) {
        if rng.random::<f64>() < p {
            edges.push((u, v, draw_weight(&mut rng, weighted)));
        }
    }
    WeightedDigraph::new(n, edges)
}

/// Like [`random_digraph`] but every vertex is reachable from vertex `0`: a random tree
/// directed away from `0` is included before the extra edges.
pub fn random_rooted_digraph(n: usize, p: f64, weighted: bool, seed: u64) -> Result<WeightedDigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = vec![false; n * n];
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.random_range(0..v);
        present[parent * n + v] = true;
        edges.push((parent, v, draw_weight(&mut rng, weighted)));
    }
    for (u, v) in slots(n, false) {
        if !present[u * n + v] && rng.random::<f64>() < p {
            edges.push((u, v, draw_weight(&mut rng, weighted)));
        }
    }
    WeightedDigraph::new(n, edges)
}

fn draw_weight(rng: &mut ChaCha8Rng, weighted: bool) -> f64 {
    if weighted {
        rng.random_range(0.1..2.0)
    } else {
        1.0
    }
}

fn adjacency_bits(g: &WeightedDigraph, perm: &[usize]) -> u64 {
    let n = g.order();
    g.edges().fold(0u64, |acc, (u, v, _)| acc | 1 << (perm[u] * n + perm[v]))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Smallest adjacency bitmask over all relabelings; equal iff the (unweighted) edge
/// structures are isomorphic. Supports `n <= 8`.
pub fn canonical_form(g: &WeightedDigraph) -> Result<u64> {
    let n = g.order();
    if n > 8 {
        return Err(RzfError::param("canonical form supports n <= 8"));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = adjacency_bits(g, &perm);
    while next_permutation(&mut perm) {
        best = best.min(adjacency_bits(g, &perm));
    }
    Ok(best)
}
