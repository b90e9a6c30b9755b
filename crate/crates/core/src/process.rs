//! One-round dynamics, seeded trajectories, shared-uniform coupling and
//! exact round skipping.
//!
//! # Random streams
//!
//! Every random quantity is drawn from a [`ChaCha8Rng`]. A run identified by
//! `(seed, replica)` uses the generator seeded with `seed_from_u64(seed)` and
//! positioned on stream `replica` ([`replica_rng`]). Within a run, a naive round
//! consumes one `f64` uniform per white vertex in ascending id order, whether or
//! not that vertex can turn blue; a coupled round consumes one uniform per vertex
//! (blue or white) in ascending id order; a skipped stretch consumes one uniform
//! for its length and then one per white vertex in ascending order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, RzfError};
use crate::graph::{is_finite_ept, BlueSet, VertexId, WeightedDigraph};

/// Default cap on simulated rounds.
pub const DEFAULT_ROUND_CAP: u64 = 10_000_000;

/// The generator for replica `replica` of the master seed `seed`.
pub fn replica_rng(seed: u64, replica: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replica);
    rng
}

/// Probability that white vertex `w` turns blue in the next round from `blue`.
///
/// The blue share of `w`'s in-weight; exactly one when every in-neighbor is blue
/// and zero when `w` has no in-weight.
pub fn success_probability(g: &WeightedDigraph, blue: &BlueSet, w: VertexId) -> f64 {
    let total = g.in_weight(w);
    if total <= 0.0 {
        return 0.0;
    }
    let mut blue_weight = 0.0;
    let mut all_blue = true;
    for &(u, weight) in g.in_edges(w) {
        if blue.contains(u) {
            blue_weight += weight;
        } else {
            all_blue = false;
        }
    }
    if all_blue {
        1.0
    } else {
        (blue_weight / total).min(1.0)
    }
}

/// Per-white-vertex success probabilities for one blue state.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionProfile {
    probs: Vec<(VertexId, f64)>,
}

impl TransitionProfile {
    /// `(white vertex, probability)` pairs in ascending vertex order.
    pub fn entries(&self) -> &[(VertexId, f64)] {
        &self.probs
    }

    pub fn get(&self, w: VertexId) -> Option<f64> {
        self.probs.binary_search_by_key(&w, |&(v, _)| v).ok().map(|i| self.probs[i].1)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Probability that no white vertex turns blue this round.
    pub fn stagnation_probability(&self) -> f64 {
        self.probs.iter().map(|&(_, p)| 1.0 - p).product()
    }

    /// Largest absolute difference from another profile over the same keys;
    /// infinite when the key sets differ.
    pub fn max_abs_diff(&self, other: &TransitionProfile) -> f64 {
        if self.probs.len() != other.probs.len() {
            return f64::INFINITY;
        }
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(&(a, p), &(b, q))| if a == b { (p - q).abs() } else { f64::INFINITY })
            .fold(0.0, f64::max)
    }
}

pub fn transition_profile(g: &WeightedDigraph, blue: &BlueSet) -> Result<TransitionProfile> {
    g.check_set(blue)?;
    Ok(profile_unchecked(g, blue))
}

fn profile_unchecked(g: &WeightedDigraph, blue: &BlueSet) -> TransitionProfile {
    TransitionProfile {
        probs: blue.iter_white().map(|w| (w, success_probability(g, blue, w))).collect(),
    }
}

/// One synchronous round: every white vertex independently turns blue with its
/// success probability.
pub fn step<R: Rng + ?Sized>(g: &WeightedDigraph, blue: &BlueSet, rng: &mut R) -> Result<BlueSet> {
    g.check_set(blue)?;
    Ok(step_unchecked(g, blue, rng))
}

fn step_unchecked<R: Rng + ?Sized>(g: &WeightedDigraph, blue: &BlueSet, rng: &mut R) -> BlueSet {
    let mut next = blue.clone();
    for w in blue.iter_white() {
        let p = success_probability(g, blue, w);
        let u: f64 = rng.random();
        if u < p {
            next.insert(w);
        }
    }
    next
}

/// One round of two processes driven by the same uniforms.
///
/// Vertex `w` turns blue on side `i` iff it is white there and `U(w) < p_i(w)`,
/// so each side has the correct marginal law while sharing randomness.
pub fn step_coupled<R: Rng + ?Sized>(
    g1: &WeightedDigraph,
    g2: &WeightedDigraph,
    b1: &BlueSet,
    b2: &BlueSet,
    rng: &mut R,
) -> Result<(BlueSet, BlueSet)> {
    if g1.order() != g2.order() {
        return Err(RzfError::OrderMismatch(g1.order(), g2.order()));
    }
    g1.check_set(b1)?;
    g2.check_set(b2)?;
    let mut n1 = b1.clone();
    let mut n2 = b2.clone();
    for w in 0..g1.order() {
        let u: f64 = rng.random();
        if !b1.contains(w) && u < success_probability(g1, b1, w) {
            n1.insert(w);
        }
        if !b2.contains(w) && u < success_probability(g2, b2, w) {
            n2.insert(w);
        }
    }
    Ok((n1, n2))
}

/// The outcome of skipping every stagnant round from a state.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundJump {
    /// Rounds consumed, including the round in which the state finally changed.
    pub skipped: u64,
    /// The first state different from the input.
    pub next: BlueSet,
}

/// Samples the waiting time to the next change of state together with that new state.
///
/// The waiting time is geometric with success probability `1 - q`, where `q` is the
/// stagnation probability; the new state is a one-round transition conditioned on
/// at least one white vertex turning blue, sampled vertex by vertex using suffix
/// products of failure probabilities.
pub fn stagnation_jump<R: Rng + ?Sized>(g: &WeightedDigraph, blue: &BlueSet, rng: &mut R) -> Result<RoundJump> {
    g.check_set(blue)?;
    if blue.is_full() {
        return Err(RzfError::param("blue set already covers the graph"));
    }
    jump_unchecked(g, blue, rng)
}

fn jump_unchecked<R: Rng + ?Sized>(g: &WeightedDigraph, blue: &BlueSet, rng: &mut R) -> Result<RoundJump> {
    let profile = profile_unchecked(g, blue);
    let probs = profile.entries();
    if probs.iter().all(|&(_, p)| p <= 0.0) {
        return Err(RzfError::Stalled);
    }
    // suffix[i] = ln prod_{j >= i} (1 - p_j)
    let mut suffix = vec![0.0f64; probs.len() + 1];
    for i in (0..probs.len()).rev() {
        suffix[i] = suffix[i + 1] + (-probs[i].1).ln_1p();
    }
    let log_q = suffix[0];

    let u: f64 = rng.random();
    let skipped = if log_q == f64::NEG_INFINITY {
        1
    } else {
        let k = ((1.0 - u).ln() / log_q).floor();
        if k >= (u64::MAX - 1) as f64 {
            u64::MAX
        } else {
            1 + k as u64
        }
    };

    let mut next = blue.clone();
    let mut pending = true;
    for (i, &(w, p)) in probs.iter().enumerate() {
        let u: f64 = rng.random();
        let threshold = if pending {
            let at_least_one = -suffix[i].exp_m1();
            if at_least_one > 0.0 {
                (p / at_least_one).min(1.0)
            } else {
                0.0
            }
        } else {
            p
        };
        if u < threshold {
            next.insert(w);
            pending = false;
        }
    }
    debug_assert!(!pending, "conditional sampling must add a vertex");
    Ok(RoundJump { skipped, next })
}

/// How a simulation advances through rounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stepping {
    /// One [`step`] per round.
    Naive,
    /// [`stagnation_jump`] per state change.
    Accelerated,
}

/// A seeded run of the process.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// Distinct blue sets in the order visited, starting with the initial set.
    pub states: Vec<BlueSet>,
    /// `times[i]` is the round at which `states[i]` was first reached.
    pub times: Vec<u64>,
    /// Absorption round when absorbed; otherwise the cap.
    pub rounds: u64,
    pub absorbed: bool,
    pub seed: u64,
}

impl Trajectory {
    /// Number of blue vertices after each round `0..=rounds`.
    pub fn blue_count_series(&self) -> Vec<usize> {
        let mut series = Vec::with_capacity(self.rounds as usize + 1);
        for (i, state) in self.states.iter().enumerate() {
            let until = self.times.get(i + 1).copied().unwrap_or(self.rounds + 1);
            for _ in self.times[i]..until {
                series.push(state.len());
            }
        }
        series
    }
}

/// Simulates from `start` until every vertex is blue or `round_cap` rounds have passed.
///
/// Uses round skipping and the generator [`replica_rng`]`(seed, 0)`.
pub fn run_to_absorption(g: &WeightedDigraph, start: &BlueSet, seed: u64, round_cap: u64) -> Result<Trajectory> {
    if !is_finite_ept(g, start)? {
        return Err(RzfError::InfiniteEpt);
    }
    run_capped(g, start, seed, round_cap, Stepping::Accelerated)
}

/// Like [`run_to_absorption`] but without the finiteness check: a run that can
/// never finish stops at the cap with `absorbed == false`.
pub fn run_capped(g: &WeightedDigraph, start: &BlueSet, seed: u64, round_cap: u64, stepping: Stepping) -> Result<Trajectory> {
    run_replica(g, start, seed, 0, round_cap, stepping)
}

/// Like [`run_capped`] on the generator `replica_rng(seed, replica)`; replica `i` of a
/// Monte Carlo estimate with the same seed and stepping follows exactly this trajectory.
pub fn run_replica(
    g: &WeightedDigraph,
    start: &BlueSet,
    seed: u64,
    replica: u64,
    round_cap: u64,
    stepping: Stepping,
) -> Result<Trajectory> {
    g.check_set(start)?;
    if round_cap == 0 {
        return Err(RzfError::param("round cap must be positive"));
    }
    let mut rng = replica_rng(seed, replica);
    let mut traj = Trajectory {
        states: vec![start.clone()],
        times: vec![0],
        rounds: 0,
        absorbed: false,
        seed,
    };
    let mut current = start.clone();
    let mut round = 0u64;
    while !current.is_full() {
        let (elapsed, next) = match stepping {
            Stepping::Naive => (1, step_unchecked(g, &current, &mut rng)),
            Stepping::Accelerated => match jump_unchecked(g, &current, &mut rng) {
                Ok(jump) => (jump.skipped, jump.next),
                Err(RzfError::Stalled) => (u64::MAX, current.clone()),
                Err(e) => return Err(e),
            },
        };
        round = round.saturating_add(elapsed);
        if round > round_cap {
            traj.rounds = round_cap;
            return Ok(traj);
        }
        if next != current {
            traj.states.push(next.clone());
            traj.times.push(round);
            current = next;
        }
    }
    traj.rounds = round;
    traj.absorbed = true;
    Ok(traj)
}

/// Absorption round of one run, or `None` past the cap. Assumes finiteness was checked.
pub(crate) fn absorption_round<R: Rng + ?Sized>(
    g: &WeightedDigraph,
    start: &BlueSet,
    rng: &mut R,
    round_cap: u64,
    stepping: Stepping,
) -> Option<u64> {
    let mut current = start.clone();
    let mut round = 0u64;
    while !current.is_full() {
        match stepping {
            Stepping::Naive => {
                current = step_unchecked(g, &current, rng);
                round += 1;
            }
            Stepping::Accelerated => {
                let jump = jump_unchecked(g, &current, rng).ok()?;
                round = round.saturating_add(jump.skipped);
                current = jump.next;
            }
        }
        if round > round_cap {
            return None;
        }
    }
    Some(round)
}
