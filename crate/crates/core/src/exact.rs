//! Exact expected propagation time by dynamic programming over blue sets.
//!
//! For a state `B` with white success probabilities `p(w)`, the expected remaining
//! time satisfies
//!
//! ```text
//! T_B = (1 + sum_{B' > B} P(B -> B') T_B') / (1 - q_B),    q_B = prod_w (1 - p(w))
//! ```
//!
//! Successors are strict supersets, so states are solved in decreasing size. Only
//! states reachable from the requested starts are visited, successors are enumerated
//! over the vertices with `0 < p < 1`, and vertices with `p = 1` are added to every
//! successor up front.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Result, RzfError};
use crate::graph::{is_finite_ept, BlueSet, VertexId, WeightedDigraph};

/// Default largest order handled by the exact solver.
pub const DEFAULT_STATE_LIMIT: usize = 22;
/// Hard ceiling on the configurable limit.
pub const MAX_STATE_LIMIT: usize = 30;

/// An expected propagation time: a finite nonnegative number or infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EptValue {
    Finite(f64),
    Infinite,
}

impl EptValue {
    pub fn is_finite(self) -> bool {
        matches!(self, EptValue::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            EptValue::Finite(x) => Some(x),
            EptValue::Infinite => None,
        }
    }

    /// The value as an `f64`, with `f64::INFINITY` for the infinite case.
    pub fn as_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    /// Reciprocal used as a centrality score; zero for infinite times.
    pub fn inverse(self) -> f64 {
        match self {
            EptValue::Finite(x) => 1.0 / x,
            EptValue::Infinite => 0.0,
        }
    }
}

impl PartialOrd for EptValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.as_f64().partial_cmp(&other.as_f64())
    }
}

impl fmt::Display for EptValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EptValue::Finite(x) => write!(f, "{x:.6}"),
            EptValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Expected remaining rounds for every state reachable from a start set.
#[derive(Clone, Debug, PartialEq)]
pub struct HittingTable {
    n: usize,
    entries: Vec<(u64, f64)>,
}

impl HittingTable {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, state: &BlueSet) -> Option<f64> {
        let mask = state.to_mask()?;
        self.entries
            .binary_search_by_key(&mask, |&(m, _)| m)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// `(state, expected remaining rounds)` in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = (BlueSet, f64)> + '_ {
        self.entries.iter().map(|&(m, t)| (BlueSet::from_mask(self.n, m), t))
    }
}

/// Exact solver with a configurable vertex limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactSolver {
    limit: usize,
}

impl Default for ExactSolver {
    fn default() -> Self {
        ExactSolver { limit: DEFAULT_STATE_LIMIT }
    }
}

impl ExactSolver {
    pub fn with_limit(limit: usize) -> Result<Self> {
        if limit == 0 || limit > MAX_STATE_LIMIT {
            return Err(RzfError::param(format!(
                "state limit must be in 1..={MAX_STATE_LIMIT}, got {limit}"
            )));
        }
        Ok(ExactSolver { limit })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Whether a graph of order `n` is within the limit.
    pub fn accepts(&self, n: usize) -> bool {
        n <= self.limit
    }

    fn check_order(&self, g: &WeightedDigraph) -> Result<()> {
        let n = g.order();
        if n > self.limit {
            // value table + reachability bitmap + state lists
            let bytes = (1u128 << n.min(100)) * (8 + 4) + (1u128 << n.min(100)) / 8;
            return Err(RzfError::StateSpaceTooLarge { n, limit: self.limit, bytes });
        }
        Ok(())
    }

    pub fn exact_ept(&self, g: &WeightedDigraph, start: &BlueSet) -> Result<EptValue> {
        self.check_order(g)?;
        if !is_finite_ept(g, start)? {
            return Ok(EptValue::Infinite);
        }
        let mask = start.to_mask().expect("order within limit fits a mask");
        let table = DenseTable::solve(g, &[mask]);
        Ok(EptValue::Finite(table.value(mask)))
    }

    pub fn hitting_table(&self, g: &WeightedDigraph, start: &BlueSet) -> Result<HittingTable> {
        self.check_order(g)?;
        if !is_finite_ept(g, start)? {
            return Err(RzfError::InfiniteEpt);
        }
        let mask = start.to_mask().expect("order within limit fits a mask");
        let table = DenseTable::solve(g, &[mask]);
        Ok(table.into_hitting_table())
    }

    /// Exact time from every singleton start, sharing one table across starts.
    pub fn singleton_profile(&self, g: &WeightedDigraph) -> Result<Vec<EptValue>> {
        self.check_order(g)?;
        let n = g.order();
        let finite: Vec<bool> = (0..n)
            .map(|v| is_finite_ept(g, &BlueSet::singleton(n, v).expect("in range")))
            .collect::<Result<_>>()?;
        let roots: Vec<u64> = (0..n).filter(|&v| finite[v]).map(|v| 1u64 << v).collect();
        if roots.is_empty() {
            return Ok(vec![EptValue::Infinite; n]);
        }
        let table = DenseTable::solve(g, &roots);
        Ok((0..n)
            .map(|v| if finite[v] { EptValue::Finite(table.value(1 << v)) } else { EptValue::Infinite })
            .collect())
    }

    /// Minimum over singleton starts and every start attaining it (ties within 1e-9).
    pub fn min_ept(&self, g: &WeightedDigraph) -> Result<(EptValue, Vec<VertexId>)> {
        let profile = self.singleton_profile(g)?;
        Ok(argmin(&profile))
    }
}

pub(crate) fn argmin(profile: &[EptValue]) -> (EptValue, Vec<VertexId>) {
    let best = profile.iter().filter_map(|e| e.finite()).fold(f64::INFINITY, f64::min);
    if best.is_infinite() {
        return (EptValue::Infinite, (0..profile.len()).collect());
    }
    let argmin = profile
        .iter()
        .enumerate()
        .filter(|(_, e)| e.finite().is_some_and(|x| (x - best).abs() <= 1e-9))
        .map(|(v, _)| v)
        .collect();
    (EptValue::Finite(best), argmin)
}

pub fn exact_ept(g: &WeightedDigraph, start: &BlueSet) -> Result<EptValue> {
    ExactSolver::default().exact_ept(g, start)
}

pub fn hitting_table(g: &WeightedDigraph, start: &BlueSet) -> Result<HittingTable> {
    ExactSolver::default().hitting_table(g, start)
}

pub fn singleton_profile(g: &WeightedDigraph) -> Result<Vec<EptValue>> {
    ExactSolver::default().singleton_profile(g)
}

pub fn min_ept(g: &WeightedDigraph) -> Result<(EptValue, Vec<VertexId>)> {
    ExactSolver::default().min_ept(g)
}

/// In-edges in mask form for fast per-state probability evaluation.
struct MaskGraph {
    n: usize,
    in_edges: Vec<Vec<(u64, f64)>>,
    in_mask: Vec<u64>,
    in_total: Vec<f64>,
}

/// Vertices with `p = 1` and `(bit, p)` for vertices with `0 < p < 1`.
struct Frontier {
    forced: u64,
    active: Vec<(u64, f64)>,
}

impl MaskGraph {
    fn new(g: &WeightedDigraph) -> Self {
        let in_edges: Vec<Vec<(u64, f64)>> = g
            .vertices()
            .map(|v| g.in_edges(v).iter().map(|&(u, w)| (1u64 << u, w)).collect())
            .collect();
        let in_mask = in_edges.iter().map(|list| list.iter().fold(0, |m, &(b, _)| m | b)).collect();
        let in_total = g.vertices().map(|v| g.in_weight(v)).collect();
        MaskGraph { n: g.order(), in_edges, in_mask, in_total }
    }

    fn full(&self) -> u64 {
        if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 }
    }

    // Mirrors `process::success_probability` term for term.
    fn frontier(&self, state: u64) -> Frontier {
        let mut forced = 0;
        let mut active = Vec::new();
        let mut white = self.full() & !state;
        while white != 0 {
            let w = white.trailing_zeros() as usize;
            white &= white - 1;
            let total = self.in_total[w];
            if total <= 0.0 || self.in_mask[w] & state == 0 {
                continue;
            }
            if self.in_mask[w] & !state == 0 {
                forced |= 1 << w;
                continue;
            }
            let blue: f64 = self.in_edges[w].iter().filter(|&&(b, _)| b & state != 0).map(|&(_, x)| x).sum();
            let p = (blue / total).min(1.0);
            if p >= 1.0 {
                forced |= 1 << w;
            } else if p > 0.0 {
                active.push((1u64 << w, p));
            }
        }
        Frontier { forced, active }
    }
}

struct DenseTable {
    n: usize,
    values: Vec<f64>,
    states: Vec<u64>,
}

impl DenseTable {
    /// Solves every state reachable from `roots`; every root must have finite time.
    fn solve(g: &WeightedDigraph, roots: &[u64]) -> Self {
        let mg = MaskGraph::new(g);
        let n = mg.n;
        let size = 1usize << n;
        let full = mg.full();

        // forward closure, layer by layer (successors are strictly larger)
        let mut seen = vec![0u64; size.div_ceil(64)];
        let mut layers: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
        let mark = |seen: &mut [u64], layers: &mut [Vec<u32>], s: u64| {
            let i = s as usize;
            if seen[i / 64] >> (i % 64) & 1 == 0 {
                seen[i / 64] |= 1 << (i % 64);
                layers[s.count_ones() as usize].push(s as u32);
            }
        };
        for &r in roots {
            mark(&mut seen, &mut layers, r);
        }
        for k in 0..n {
            let mut idx = 0;
            while idx < layers[k].len() {
                let state = layers[k][idx] as u64;
                idx += 1;
                let fr = mg.frontier(state);
                let base = state | fr.forced;
                for_each_subset(&fr.active, base, &mut |s| {
                    if s != state {
                        mark(&mut seen, &mut layers, s);
                    }
                });
            }
        }

        let mut values = vec![f64::NAN; size];
        values[full as usize] = 0.0;
        for k in (0..n).rev() {
            let layer = &layers[k];
            if layer.is_empty() {
                continue;
            }
            let solved: Vec<f64> = layer
                .par_iter()
                .map(|&s| {
                    let state = s as u64;
                    let fr = mg.frontier(state);
                    let base = state | fr.forced;
                    let mut acc = 0.0;
                    weighted_sum(&fr.active, base, 1.0, state, &values, &mut acc);
                    let progress = if fr.forced != 0 {
                        1.0
                    } else {
                        let log_q: f64 = fr.active.iter().map(|&(_, p)| (-p).ln_1p()).sum();
                        -log_q.exp_m1()
                    };
                    (1.0 + acc) / progress
                })
                .collect();
            for (&s, t) in layer.iter().zip(solved) {
                values[s as usize] = t;
            }
        }
        let mut states: Vec<u64> = layers.into_iter().flatten().map(u64::from).collect();
        states.sort_unstable();
        DenseTable { n, values, states }
    }

    fn value(&self, mask: u64) -> f64 {
        self.values[mask as usize]
    }

    fn into_hitting_table(self) -> HittingTable {
        let entries = self.states.iter().map(|&s| (s, self.values[s as usize])).collect();
        HittingTable { n: self.n, entries }
    }
}

fn for_each_subset(active: &[(u64, f64)], base: u64, f: &mut impl FnMut(u64)) {
    match active.split_first() {
        None => f(base),
        Some((&(bit, _), rest)) => {
            for_each_subset(rest, base, f);
            for_each_subset(rest, base | bit, f);
        }
    }
}

fn weighted_sum(active: &[(u64, f64)], base: u64, prob: f64, state: u64, values: &[f64], acc: &mut f64) {
    match active.split_first() {
        None => {
            if base != state {
                *acc += prob * values[base as usize];
            }
        }
        Some((&(bit, p), rest)) => {
            weighted_sum(rest, base, prob * (1.0 - p), state, values, acc);
            weighted_sum(rest, base | bit, prob * p, state, values, acc);
        }
    }
}
