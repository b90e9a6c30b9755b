//! Monte Carlo estimation of propagation times.
//!
//! Run `i` of an estimate seeded with `seed` draws from `replica_rng(seed, i)`, so
//! replicas run concurrently and the aggregate is a pure function of the inputs.

use rayon::prelude::*;

use crate::error::{Result, RzfError};
use crate::families::{generate, FamilySpec};
use crate::graph::{is_finite_ept, BlueSet, WeightedDigraph};
use crate::process::{absorption_round, replica_rng, Stepping, DEFAULT_ROUND_CAP};

/// Sample mean of absorption rounds with its standard error and a normal 95% interval.
#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub runs: u64,
    pub ci95: (f64, f64),
    pub seed: u64,
}

impl McEstimate {
    fn from_samples(samples: &[u64], seed: u64) -> Self {
        let runs = samples.len() as u64;
        let n = samples.len() as f64;
        let mean = samples.iter().map(|&x| x as f64).sum::<f64>() / n;
        let ss: f64 = samples.iter().map(|&x| (x as f64 - mean).powi(2)).sum();
        let sd = (ss / (n - 1.0)).sqrt();
        let stderr = sd / n.sqrt();
        McEstimate { mean, stderr, runs, ci95: (mean - 1.96 * stderr, mean + 1.96 * stderr), seed }
    }

    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.stderr
    }
}

/// Tail probability `P(tau >= t)` with its binomial standard error.
#[derive(Clone, Debug, PartialEq)]
pub struct TailEstimate {
    pub t: u64,
    pub probability: f64,
    pub stderr: f64,
    pub runs: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McOptions {
    pub runs: u64,
    pub seed: u64,
    pub stepping: Stepping,
    pub round_cap: u64,
}

impl McOptions {
    pub fn new(runs: u64, seed: u64) -> Self {
        McOptions { runs, seed, stepping: Stepping::Accelerated, round_cap: DEFAULT_ROUND_CAP }
    }

    pub fn stepping(mut self, stepping: Stepping) -> Self {
        self.stepping = stepping;
        self
    }

    pub fn round_cap(mut self, round_cap: u64) -> Self {
        self.round_cap = round_cap;
        self
    }
}

/// Absorption rounds of every replica in replica order; `None` marks a run past the cap.
pub fn absorption_samples(g: &WeightedDigraph, start: &BlueSet, opts: &McOptions) -> Result<Vec<Option<u64>>> {
    sample_streams(g, start, opts, 0)
}

fn sample_streams(g: &WeightedDigraph, start: &BlueSet, opts: &McOptions, offset: u64) -> Result<Vec<Option<u64>>> {
    g.check_set(start)?;
    if !is_finite_ept(g, start)? {
        return Err(RzfError::InfiniteEpt);
    }
    if opts.round_cap == 0 {
        return Err(RzfError::param("round cap must be positive"));
    }
    Ok((0..opts.runs)
        .into_par_iter()
        .map(|i| {
            let mut rng = replica_rng(opts.seed, offset + i);
            absorption_round(g, start, &mut rng, opts.round_cap, opts.stepping)
        })
        .collect())
}

fn check_runs(runs: u64) -> Result<()> {
    if runs < 2 {
        return Err(RzfError::param(format!("at least 2 runs are required, got {runs}")));
    }
    Ok(())
}

fn completed(samples: Vec<Option<u64>>, cap: u64) -> Result<Vec<u64>> {
    samples
        .into_iter()
        .map(|s| s.ok_or_else(|| RzfError::param(format!("a run exceeded the round cap of {cap}"))))
        .collect()
}

pub fn mc_ept(g: &WeightedDigraph, start: &BlueSet, runs: u64, seed: u64) -> Result<McEstimate> {
    mc_ept_with(g, start, &McOptions::new(runs, seed))
}

pub fn mc_ept_with(g: &WeightedDigraph, start: &BlueSet, opts: &McOptions) -> Result<McEstimate> {
    check_runs(opts.runs)?;
    let samples = completed(absorption_samples(g, start, opts)?, opts.round_cap)?;
    Ok(McEstimate::from_samples(&samples, opts.seed))
}

/// Estimates from every singleton start; `None` where the time is infinite.
///
/// Start `v` uses replica streams `v * runs .. (v + 1) * runs`.
pub fn mc_singleton_profile(g: &WeightedDigraph, runs: u64, seed: u64) -> Result<Vec<Option<McEstimate>>> {
    check_runs(runs)?;
    let opts = McOptions::new(runs, seed);
    g.vertices()
        .map(|v| {
            let start = BlueSet::singleton(g.order(), v)?;
            if !is_finite_ept(g, &start)? {
                return Ok(None);
            }
            let samples = completed(sample_streams(g, &start, &opts, v as u64 * runs)?, opts.round_cap)?;
            Ok(Some(McEstimate::from_samples(&samples, seed)))
        })
        .collect()
}

/// Fraction of runs with absorption round at least `t`.
pub fn mc_tail(g: &WeightedDigraph, start: &BlueSet, t: u64, runs: u64, seed: u64) -> Result<TailEstimate> {
    check_runs(runs)?;
    let opts = McOptions::new(runs, seed);
    if t > opts.round_cap {
        return Err(RzfError::param(format!("tail threshold {t} exceeds the round cap")));
    }
    let samples = absorption_samples(g, start, &opts)?;
    let hits = samples.iter().filter(|s| s.is_none_or(|r| r >= t)).count();
    let probability = hits as f64 / runs as f64;
    let stderr = (probability * (1.0 - probability) / runs as f64).sqrt();
    Ok(TailEstimate { t, probability, stderr, runs, seed })
}

/// Mean time on the balanced bidirected spider from its center, and whether it lies
/// in `[2n - 1, 2n - 1 + 10 sqrt(kn)]`.
pub fn mc_spider_band(legs: usize, length: usize, runs: u64, seed: u64) -> Result<(McEstimate, bool)> {
    if legs < 2 || length < 2 {
        return Err(RzfError::param("spider band needs at least 2 legs of length at least 2"));
    }
    let gen = generate(&FamilySpec::Spider { legs, length })?;
    let est = mc_ept(&gen.graph, &gen.start, runs, seed)?;
    let lo = 2.0 * length as f64 - 1.0;
    let hi = lo + 10.0 * ((legs * length) as f64).sqrt();
    let inside = est.mean >= lo && est.mean <= hi;
    Ok((est, inside))
}
