//! The `rank`, `simulate`, `verify` and `generate` commands as library functions.

use std::str::FromStr;

use rzf_core::estimator::mc_singleton_profile;
use rzf_core::exact::DEFAULT_STATE_LIMIT;
use rzf_core::families::{parse_config, FamilySpec, GeneratedGraph, StartRole};
use rzf_core::graph::is_finite_ept;
use rzf_core::process::{run_replica, Stepping, DEFAULT_ROUND_CAP};
use rzf_core::verify::{run_suite, CheckResult, Scope};
use rzf_core::{BlueSet, EptValue, ExactSolver, RzfError, WeightedDigraph};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::report::{fixed6, Method, RankReport};

pub const LIMIT_ENV: &str = "RZF_DP_LIMIT";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Exact,
    Mc,
}

impl FromStr for MethodChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "exact" => Ok(MethodChoice::Exact),
            "mc" => Ok(MethodChoice::Mc),
            other => Err(CliError::Usage(format!("unknown method `{other}` (auto, exact, mc)"))),
        }
    }
}

/// Exact when the graph fits under `limit`, Monte Carlo otherwise.
pub fn select_method(n: usize, limit: usize) -> Method {
    if n <= limit {
        Method::Exact
    } else {
        Method::MonteCarlo
    }
}

/// The state limit from `explicit`, else `RZF_DP_LIMIT`, else the library default.
pub fn resolve_limit(explicit: Option<usize>) -> Result<usize> {
    if let Some(l) = explicit {
        return Ok(l);
    }
    match std::env::var(LIMIT_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{LIMIT_ENV} must be an integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_STATE_LIMIT),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOptions {
    pub method: MethodChoice,
    pub runs: u64,
    pub seed: u64,
    pub limit: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { method: MethodChoice::Auto, runs: 10_000, seed: 0, limit: DEFAULT_STATE_LIMIT }
    }
}

/// Singleton times of every vertex, ranked.
pub fn cmd_rank(g: &WeightedDigraph, opts: &RankOptions) -> Result<RankReport> {
    let method = match opts.method {
        MethodChoice::Auto => select_method(g.order(), opts.limit),
        MethodChoice::Exact => Method::Exact,
        MethodChoice::Mc => Method::MonteCarlo,
    };
    match method {
        Method::Exact => {
            let solver = ExactSolver::with_limit(opts.limit)?;
            if !solver.accepts(g.order()) {
                return Err(CliError::Usage(format!(
                    "exact ranking of {} vertices exceeds the limit of {}; use --method mc or raise --limit",
                    g.order(),
                    opts.limit
                )));
            }
            let epts = solver.singleton_profile(g)?;
            Ok(RankReport::new(g, &epts, method, opts.limit, None, None))
        }
        Method::MonteCarlo => {
            let estimates = mc_singleton_profile(g, opts.runs, opts.seed)?;
            let epts: Vec<EptValue> =
                estimates.iter().map(|e| e.as_ref().map_or(EptValue::Infinite, |e| EptValue::Finite(e.mean))).collect();
            Ok(RankReport::new(g, &epts, method, opts.limit, Some(opts.runs), Some(opts.seed)))
        }
    }
}

/// Resolves a list of labels (or decimal ids on unlabeled graphs) to a blue set.
pub fn resolve_start(g: &WeightedDigraph, labels: &[String]) -> Result<BlueSet> {
    if labels.is_empty() {
        return Err(CliError::Usage("the start set must name at least one vertex".into()));
    }
    let ids = labels
        .iter()
        .map(|l| g.vertex_by_label(l).ok_or_else(|| CliError::Usage(format!("unknown vertex `{l}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlueSet::from_vertices(g.order(), ids)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Summary,
    Trajectory,
}

impl FromStr for Emit {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "summary" => Ok(Emit::Summary),
            "trajectory" => Ok(Emit::Trajectory),
            other => Err(CliError::Usage(format!("unknown emit mode `{other}` (summary, trajectory)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulateOptions {
    pub runs: u64,
    pub seed: u64,
    pub allow_infinite: bool,
    pub cap: Option<u64>,
    pub stepping: Stepping,
}

impl Default for SimulateOptions {
    fn default() -> Self {
        SimulateOptions { runs: 1000, seed: 0, allow_infinite: false, cap: None, stepping: Stepping::Accelerated }
    }
}

/// One simulated run: absorption round (or the cap) and blue counts after each round.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub absorbed: bool,
    pub blue_counts: Vec<usize>,
    pub rounds: u64,
    pub run: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub absorbed: u64,
    pub cap: u64,
    /// Mean, standard error and 95% interval, present only when every run absorbed.
    pub ci95: Option<(f64, f64)>,
    pub mean: Option<f64>,
    pub runs: u64,
    pub seed: u64,
    pub stderr: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Simulation {
    pub records: Vec<RunRecord>,
    pub summary: SimulationSummary,
}

/// Runs `runs` seeded replicas from `start`.
///
/// Replica `i` uses the same random stream as run `i` of a Monte Carlo estimate with the
/// same seed, so summaries agree with `rank --method mc` style estimates.
pub fn cmd_simulate(g: &WeightedDigraph, start: &BlueSet, opts: &SimulateOptions) -> Result<Simulation> {
    if opts.runs < 2 {
        return Err(CliError::Usage("at least 2 runs are required".into()));
    }
    let finite = is_finite_ept(g, start)?;
    let cap = match (finite, opts.allow_infinite, opts.cap) {
        (false, false, _) => {
            return Err(CliError::Infinite(
                "not every vertex is reachable from the start set; pass --allow-infinite with --cap to simulate anyway"
                    .into(),
            ))
        }
        (false, true, None) => return Err(CliError::Usage("--allow-infinite requires --cap".into())),
        (_, _, Some(c)) => c,
        (true, _, None) => DEFAULT_ROUND_CAP,
    };
    let records = (0..opts.runs)
        .map(|i| {
            let t = run_replica(g, start, opts.seed, i, cap, opts.stepping)?;
            Ok(RunRecord { absorbed: t.absorbed, blue_counts: t.blue_count_series(), rounds: t.rounds, run: i })
        })
        .collect::<std::result::Result<Vec<_>, RzfError>>()?;
    let absorbed = records.iter().filter(|r| r.absorbed).count() as u64;
    let (mut mean, mut stderr, mut ci95) = (None, None, None);
    if absorbed == opts.runs {
        let n = opts.runs as f64;
        let m = records.iter().map(|r| r.rounds as f64).sum::<f64>() / n;
        let var = records.iter().map(|r| (r.rounds as f64 - m).powi(2)).sum::<f64>() / (n - 1.0);
        let se = (var / n).sqrt();
        mean = Some(m);
        stderr = Some(se);
        ci95 = Some((m - 1.96 * se, m + 1.96 * se));
    }
    let summary = SimulationSummary { absorbed, cap, ci95, mean, runs: opts.runs, seed: opts.seed, stderr };
    Ok(Simulation { records, summary })
}

impl Simulation {
    pub fn summary_json(&self) -> String {
        let s = &self.summary;
        let num = |x: Option<f64>| x.map_or_else(|| "null".to_string(), fixed6);
        let ci = s.ci95.map_or_else(|| "null".to_string(), |(a, b)| format!("[{}, {}]", fixed6(a), fixed6(b)));
        format!(
            "{{\n  \"absorbed\": {},\n  \"cap\": {},\n  \"ci95\": {},\n  \"mean\": {},\n  \"runs\": {},\n  \"seed\": {},\n  \"stderr\": {}\n}}\n",
            s.absorbed,
            s.cap,
            ci,
            num(s.mean),
            s.runs,
            s.seed,
            num(s.stderr)
        )
    }

    pub fn trajectories_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.records).map_err(|e| CliError::Data(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// Long format `run,round,blue` for plotting.
    pub fn trajectories_csv(&self) -> String {
        let mut out = String::from("run,round,blue\n");
        for r in &self.records {
            for (t, c) in r.blue_counts.iter().enumerate() {
                out.push_str(&format!("{},{t},{c}\n", r.run));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub detail: String,
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub checks: Vec<CheckRecord>,
    pub failed: usize,
    pub passed: usize,
    pub scope: String,
    pub seed: u64,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Data(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

pub fn summarize_checks(scope: &str, seed: u64, results: Vec<CheckResult>) -> VerifySummary {
    let passed = results.iter().filter(|r| r.passed).count();
    let failed = results.len() - passed;
    let checks = results.into_iter().map(|r| CheckRecord { detail: r.detail, name: r.name, passed: r.passed }).collect();
    VerifySummary { checks, failed, passed, scope: scope.to_string(), seed }
}

pub fn cmd_verify(scope: &str, seed: u64) -> Result<VerifySummary> {
    let parsed: Scope = scope.parse().map_err(|e: RzfError| CliError::Usage(e.to_string()))?;
    Ok(summarize_checks(scope, seed, run_suite(parsed, seed)))
}

/// Builds the family described by a config file; returns the graph and its canonical start.
pub fn cmd_generate(config_text: &str) -> Result<GeneratedGraph> {
    let cfg = parse_config(config_text)?;
    let spec = FamilySpec::from_config(&cfg)?;
    Ok(rzf_core::families::generate_for(&spec, StartRole::Canonical)?)
}
