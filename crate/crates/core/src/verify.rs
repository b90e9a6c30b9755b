//! Self-check suites: family oracles, bound conformance and coupled monotonicity.

use std::fmt;
use std::str::FromStr;

use crate::bounds::{degree_bound, edge_bound, pendant_source_formula, radius_bound_and_equality, weight_bound};
use crate::enumerate::{all_digraphs, random_rooted_digraph};
use crate::error::{Result, RzfError};
use crate::exact::{exact_ept, singleton_profile};
use crate::families::{attach_pendant_source, generate, FamilySpec, GeneratedGraph};
use crate::graph::{BlueSet, WeightedDigraph};
use crate::process::{replica_rng, step_coupled};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Families,
    Bounds,
    Couplings,
    All,
}

impl FromStr for Scope {
    type Err = RzfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "families" => Ok(Scope::Families),
            "bounds" => Ok(Scope::Bounds),
            "couplings" => Ok(Scope::Couplings),
            "all" => Ok(Scope::All),
            other => Err(RzfError::param(format!("unknown scope `{other}` (families, bounds, couplings, all)"))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Families => "families",
            Scope::Bounds => "bounds",
            Scope::Couplings => "couplings",
            Scope::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => CheckResult::new(name, passed, detail),
            Err(e) => CheckResult::new(name, false, format!("error: {e}")),
        }
    }
}

/// Runs the suites in `scope`. Stochastic checks are seeded from `seed`.
pub fn run_suite(scope: Scope, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if matches!(scope, Scope::Families | Scope::All) {
        out.extend(family_checks());
    }
    if matches!(scope, Scope::Bounds | Scope::All) {
        out.extend(bound_checks());
    }
    if matches!(scope, Scope::Couplings | Scope::All) {
        out.extend(coupling_checks(seed));
    }
    out
}

/// Compares the exact time of a generated graph against its oracle.
///
/// Exact oracles must match within 1e-9; bounds and bands must admit the value.
pub fn check_family_oracle(name: &str, gen: &GeneratedGraph) -> CheckResult {
    let r = (|| {
        let oracle = gen.oracle.ok_or_else(|| RzfError::param("no oracle"))?;
        let value = exact_ept(&gen.graph, &gen.start)?;
        let passed = value.is_finite() && oracle.admits(value.as_f64(), 1e-9);
        Ok((passed, format!("dp = {value}, oracle = {oracle:?}")))
    })();
    CheckResult::from_result(name, r)
}

fn family_cases() -> Vec<(String, FamilySpec)> {
    let mut cases: Vec<(String, FamilySpec)> = vec![
        ("unipath_formula".into(), FamilySpec::UniPath { order: 8 }),
        ("bipath_endpoint_formula".into(), FamilySpec::bipath(9)),
        (
            "weighted_path_formula".into(),
            FamilySpec::BiPath { forward: vec![1.0, 2.0, 3.0, 0.5, 1.5], backward: vec![2.0, 1.0, 1.0, 4.0, 0.25] },
        ),
        ("unicycle_formula".into(), FamilySpec::UniCycle { order: 7 }),
        ("star_leaf_formula".into(), FamilySpec::Star { leaves: 6 }),
        (
            "weighted_star_formula".into(),
            FamilySpec::WeightedStar { a: vec![1.0, 2.0, 3.0, 0.5], b: vec![1.0, 3.0, 2.0, 1.0], start_leaves: vec![0, 2] },
        ),
        ("kary_uni_depth".into(), FamilySpec::KaryTreeUni { arity: 2, depth: 3 }),
        ("kary_bi_layered_bound".into(), FamilySpec::KaryTreeBi { arity: 2, depth: 2 }),
        (
            "arborescence_eccentricity".into(),
            FamilySpec::Arborescence {
                parents: vec![None, Some(0), Some(0), Some(1), Some(3), Some(2)],
                weights: vec![1.0, 0.5, 2.0, 1.0, 3.0, 1.0],
            },
        ),
        ("fort_weighting_k10".into(), FamilySpec::FortWeighting { k: 10 }),
        ("fort_weighting_k100".into(), FamilySpec::FortWeighting { k: 100 }),
        ("edge_join_sharp".into(), FamilySpec::EdgeJoinSharp { m: 3, n: 4, d: 2 }),
        ("weighted_edge_join_sharp".into(), FamilySpec::WeightedEdgeJoinSharp { m: 2, n: 3, d: 2.0, w: 0.5 }),
    ];
    for (n, cw, ccw, arc) in [(6, 1.0, 1.0, 1), (7, 0.3, 2.0, 2), (9, 5.0, 0.1, 3)] {
        cases.push((format!("cycle_formula n={n} p={cw} q={ccw} k={arc}"), FamilySpec::BiCycle { order: n, cw, ccw, arc }));
    }
    for centers in 3..=7 {
        cases.push((format!("sun_formula n={centers}"), FamilySpec::Sun { centers }));
    }
    for order in [3, 5, 8] {
        cases.push((format!("complete_chain n={order}"), FamilySpec::Complete { order }));
    }
    for m in 1..=4 {
        cases.push((format!("quad_construction m={m}"), FamilySpec::QuadConstruction { m }));
    }
    for (order, d) in [(8, 1), (10, 2), (9, 3)] {
        cases.push((format!("maxdeg_construction n={order} d={d}"), FamilySpec::MaxdegConstruction { order, d }));
    }
    for w in [0.1, 0.5, 1.0] {
        cases.push((format!("weight_construction n=8 w={w}"), FamilySpec::WeightConstruction { order: 8, w }));
    }
    cases
}

fn family_checks() -> Vec<CheckResult> {
    family_cases()
        .into_iter()
        .map(|(name, spec)| match generate(&spec) {
            Ok(gen) => check_family_oracle(&name, &gen),
            Err(e) => CheckResult::new(name, false, format!("error: {e}")),
        })
        .collect()
}

fn bound_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();

    let sweep = (|| {
        let mut graphs = 0usize;
        let mut violations = 0usize;
        for g in all_digraphs(3, false)? {
            graphs += 1;
            let profile = singleton_profile(&g)?;
            for (v, ept) in profile.iter().enumerate() {
                let radius = radius_bound_and_equality(&g, v, Some(*ept))?;
                let edge_ok = !ept.is_finite() || edge_bound(&g, v)?.check(*ept).satisfied == Some(true);
                let lower_ok = radius.bound.satisfied == Some(true);
                if !(edge_ok && lower_ok && radius.consistent()) {
                    violations += 1;
                }
            }
        }
        Ok((violations == 0, format!("{graphs} graphs, {violations} violations")))
    })();
    out.push(CheckResult::from_result("edge_and_radius_sweep n<=3", sweep));

    let maxdeg = (|| {
        let gen = generate(&FamilySpec::MaxdegConstruction { order: 10, d: 2 })?;
        let value = exact_ept(&gen.graph, &gen.start)?.as_f64();
        let bound = degree_bound(10, 2);
        Ok(((value - bound).abs() <= 1e-9, format!("dp = {value:.9}, bound = {bound}")))
    })();
    out.push(CheckResult::from_result("degree_bound_attained", maxdeg));

    let weight = (|| {
        let gen = generate(&FamilySpec::WeightConstruction { order: 6, w: 0.5 })?;
        let value = exact_ept(&gen.graph, &gen.start)?.as_f64();
        let bound = weight_bound(6, 0.5)?;
        Ok(((value - bound).abs() <= 1e-9, format!("dp = {value:.9}, bound = {bound}")))
    })();
    out.push(CheckResult::from_result("weight_bound_attained", weight));

    let pendant = (|| {
        let p3 = FamilySpec::bipath(3).build()?;
        let inner = exact_ept(&p3, &BlueSet::singleton(3, 0)?)?.as_f64();
        let (k, b) = attach_pendant_source(&p3, 0, 1.0)?;
        let value = exact_ept(&k, &BlueSet::singleton(4, b)?)?.as_f64();
        let formula = pendant_source_formula(inner, p3.in_weight(0), 1.0)?;
        Ok(((value - formula).abs() <= 1e-9, format!("dp = {value:.9}, formula = {formula}")))
    })();
    out.push(CheckResult::from_result("pendant_source_formula", pendant));
    out
}

/// Rounds, over `runs` shared-uniform runs, in which the side-1 blue set is not contained
/// in the side-2 blue set. Runs stop once side 1 is all blue or after `max_rounds`.
pub fn coupled_violations(
    g1: &WeightedDigraph,
    g2: &WeightedDigraph,
    s1: &BlueSet,
    s2: &BlueSet,
    runs: u64,
    seed: u64,
    max_rounds: u64,
) -> Result<(u64, u64)> {
    let mut violations = 0;
    let mut rounds = 0;
    for r in 0..runs {
        let mut rng = replica_rng(seed, r);
        let (mut b1, mut b2) = (s1.clone(), s2.clone());
        let mut t = 0;
        while !b1.is_full() && t < max_rounds {
            (b1, b2) = step_coupled(g1, g2, &b1, &b2, &mut rng)?;
            t += 1;
            rounds += 1;
            if !b1.is_subset(&b2) {
                violations += 1;
            }
        }
    }
    Ok((violations, rounds))
}

fn coupling_checks(seed: u64) -> Vec<CheckResult> {
    let mut nested = Vec::new();
    let mut weights = Vec::new();
    for i in 0..5u64 {
        let n = 5 + (i as usize % 3);
        let r = (|| {
            let g = random_rooted_digraph(n, 0.3, true, seed.wrapping_add(i))?;
            let s1 = BlueSet::singleton(n, 0)?;
            let s2 = BlueSet::from_vertices(n, [0, n - 1])?;
            let (bad, rounds) = coupled_violations(&g, &g, &s1, &s2, 200, seed ^ i, 100_000)?;
            nested.push((bad, rounds));
            let heavier = g.rebuilt(g.edges().map(|(u, v, w)| if u == 0 { (u, v, w * 3.0) } else { (u, v, w) }))?;
            let (bad, rounds) = coupled_violations(&g, &heavier, &s1, &s1, 200, seed ^ (i << 8), 100_000)?;
            weights.push((bad, rounds));
            Ok::<_, RzfError>(())
        })();
        if let Err(e) = r {
            return vec![CheckResult::new("coupling_setup", false, format!("error: {e}"))];
        }
    }
    let summarize = |name: &str, xs: &[(u64, u64)]| {
        let bad: u64 = xs.iter().map(|x| x.0).sum();
        let rounds: u64 = xs.iter().map(|x| x.1).sum();
        CheckResult::new(name, bad == 0, format!("{bad} violations in {rounds} coupled rounds"))
    };
    vec![
        summarize("coupling_nested_starts", &nested),
        summarize("coupling_blue_out_weights", &weights),
    ]
}
