mod common;

use std::collections::{BTreeMap, HashMap, HashSet};

use common::{bipath, flip_prob, successors};
use rzf_core::enumerate::{all_digraphs, canonical_form, random_rooted_digraph};
use rzf_core::estimator::{absorption_samples, mc_ept_with, mc_singleton_profile, mc_tail, McOptions};
use rzf_core::graph::is_finite_ept;
use rzf_core::process::{replica_rng, stagnation_jump, step, Stepping};
use rzf_core::{exact_ept, mc_ept, BlueSet, WeightedDigraph};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn mixed_graph() -> WeightedDigraph {
    WeightedDigraph::new(
        5,
        [(0, 1, 1.0), (0, 2, 2.0), (1, 2, 1.0), (3, 2, 0.5), (2, 3, 1.0), (1, 4, 3.0), (4, 4, 1.0), (3, 4, 0.5), (4, 0, 1.0)],
    )
    .unwrap()
}

#[test]
fn single_round_flip_frequencies() {
    let g = mixed_graph();
    let b = BlueSet::from_vertices(5, [0, 3]).unwrap();
    let trials = 200_000;
    let mut counts = [0u32; 5];
    let mut rng = replica_rng(17, 0);
    for _ in 0..trials {
        let next = step(&g, &b, &mut rng).unwrap();
        for w in b.iter_white() {
            if next.contains(w) {
                counts[w] += 1;
            }
        }
    }
    for w in b.iter_white() {
        let p = flip_prob(&g, 0b1001, w);
        let freq = counts[w] as f64 / trials as f64;
        let sd = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((freq - p).abs() <= 4.0 * sd + 1e-12, "vertex {w}: {freq} vs {p}");
    }
}

#[test]
fn jumps_match_the_conditioned_one_step_law() {
    let g = mixed_graph();
    let mask = 0b00001usize;
    let b = BlueSet::from_mask(5, mask as u64);
    let law = successors(&g, mask);
    let stay: f64 = law.iter().filter(|s| s.0 == mask).map(|s| s.1).sum();
    let trials = 200_000u64;
    let mut rng = replica_rng(23, 0);
    let mut skipped = 0u64;
    let mut seen: HashMap<usize, u64> = HashMap::new();
    for _ in 0..trials {
        let jump = stagnation_jump(&g, &b, &mut rng).unwrap();
        skipped += jump.skipped;
        *seen.entry(jump.next.to_mask().unwrap() as usize).or_default() += 1;
    }
    let mean = skipped as f64 / trials as f64;
    let want = 1.0 / (1.0 - stay);
    let sd = (stay.sqrt() / (1.0 - stay)) / (trials as f64).sqrt();
    assert!((mean - want).abs() <= 4.0 * sd, "{mean} vs {want}");
    let tv: f64 = law
        .iter()
        .filter(|s| s.0 != mask)
        .map(|&(s, p)| (p / (1.0 - stay) - *seen.get(&s).unwrap_or(&0) as f64 / trials as f64).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv < 0.02, "total variation {tv}");
    assert!(seen.keys().all(|&s| s != mask));
}

/// Two-sample chi-squared p-value for equality of two count histograms, pooling sparse bins.
fn homogeneity_p_value(a: &[u64], b: &[u64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut hist: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for &x in a {
        hist.entry(x).or_default().0 += 1.0;
    }
    for &x in b {
        hist.entry(x).or_default().1 += 1.0;
    }
    let total = na + nb;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (_, (x, y)) in hist {
        acc.0 += x;
        acc.1 += y;
        if (acc.0 + acc.1) * na.min(nb) / total >= 5.0 {
            bins.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.0 + acc.1 > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => bins.push(acc),
        }
    }
    if bins.len() < 2 {
        return 1.0;
    }
    let stat: f64 = bins
        .iter()
        .map(|&(x, y)| {
            let col = x + y;
            let (ex, ey) = (col * na / total, col * nb / total);
            (x - ex).powi(2) / ex + (y - ey).powi(2) / ey
        })
        .sum();
    let dist = ChiSquared::new((bins.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

fn completed(g: &WeightedDigraph, s: &BlueSet, runs: u64, seed: u64, stepping: Stepping) -> Vec<u64> {
    let opts = McOptions::new(runs, seed).stepping(stepping);
    absorption_samples(g, s, &opts).unwrap().into_iter().map(Option::unwrap).collect()
}

#[test]
fn acceleration_preserves_the_absorption_law() {
    let mut cases = Vec::new();
    let mut seen = HashSet::new();
    for n in 2..=3 {
        for g in all_digraphs(n, false).unwrap() {
            if seen.insert((n, canonical_form(&g).unwrap())) {
                cases.push(g);
            }
        }
    }
    for seed in 0..6 {
        cases.push(random_rooted_digraph(4, 0.4, seed % 2 == 0, seed).unwrap());
    }
    let mut tested = 0;
    for (i, g) in cases.iter().enumerate() {
        let s = BlueSet::singleton(g.order(), 0).unwrap();
        if !is_finite_ept(g, &s).unwrap() {
            continue;
        }
        let naive = completed(g, &s, 20_000, i as u64, Stepping::Naive);
        let fast = completed(g, &s, 20_000, 1000 + i as u64, Stepping::Accelerated);
        let p = homogeneity_p_value(&naive, &fast);
        tested += 1;
        assert!(p > 1e-3, "case {i} {g:?}: p = {p}");
    }
    assert!(tested >= 8, "only {tested} finite cases");
}

#[test]
fn chi_squared_helper_detects_a_shift() {
    let a: Vec<u64> = (0..2000).map(|i| i % 4).collect();
    let b: Vec<u64> = (0..2000).map(|i| 1 + i % 4).collect();
    assert!(homogeneity_p_value(&a, &b) < 1e-6);
    assert!(homogeneity_p_value(&a, &a) > 0.99);
}

#[test]
fn estimates_are_reproducible_and_consistent() {
    for seed in 0..10u64 {
        let n = 4 + seed as usize % 5;
        let g = random_rooted_digraph(n, 0.3, true, 500 + seed).unwrap();
        let s = BlueSet::singleton(n, 0).unwrap();
        let exact = exact_ept(&g, &s).unwrap().as_f64();
        let est = mc_ept(&g, &s, 20_000, seed).unwrap();
        assert_eq!(est, mc_ept(&g, &s, 20_000, seed).unwrap());
        assert!(est.within(exact, 4.0), "graph {seed}: {} +- {} vs {exact}", est.mean, est.stderr);
        assert!((est.ci95.1 - est.ci95.0 - 2.0 * 1.96 * est.stderr).abs() < 1e-12);
    }
}

#[test]
fn acceleration_does_not_move_the_mean() {
    let g = mixed_graph();
    let s = BlueSet::singleton(5, 0).unwrap();
    let naive = mc_ept_with(&g, &s, &McOptions::new(50_000, 1).stepping(Stepping::Naive)).unwrap();
    let fast = mc_ept_with(&g, &s, &McOptions::new(50_000, 2).stepping(Stepping::Accelerated)).unwrap();
    let combined = (naive.stderr.powi(2) + fast.stderr.powi(2)).sqrt();
    assert!((naive.mean - fast.mean).abs() <= 4.0 * combined);
}

/// `P(tau >= t)` from the exact transient distribution.
fn exact_tail(g: &WeightedDigraph, start: usize, t: u64) -> f64 {
    let full = (1usize << g.order()) - 1;
    let mut dist: HashMap<usize, f64> = HashMap::from([(start, 1.0)]);
    for _ in 0..t.saturating_sub(1) {
        let mut next: HashMap<usize, f64> = HashMap::new();
        for (&b, &p) in &dist {
            for (s, q) in successors(g, b) {
                *next.entry(s).or_default() += p * q;
            }
        }
        dist = next;
    }
    1.0 - dist.get(&full).copied().unwrap_or(0.0)
}

#[test]
fn tail_estimates_match_the_transient_law() {
    let g = mixed_graph();
    let s = BlueSet::singleton(5, 0).unwrap();
    for t in [1, 3, 5, 8, 12] {
        let est = mc_tail(&g, &s, t, 50_000, t).unwrap();
        let exact = exact_tail(&g, 1, t);
        let sd = (exact * (1.0 - exact) / 50_000.0).sqrt();
        assert!((est.probability - exact).abs() <= 4.0 * sd + 1e-12, "t {t}: {} vs {exact}", est.probability);
    }
}

#[test]
fn path_endpoint_mean() {
    let g = bipath(8);
    let est = mc_ept(&g, &BlueSet::singleton(8, 0).unwrap(), 40_000, 99).unwrap();
    assert!(est.within(13.0, 4.0), "{} +- {}", est.mean, est.stderr);
    let profile = mc_singleton_profile(&g, 1000, 3).unwrap();
    assert_eq!(profile.len(), 8);
    assert!(profile.iter().all(Option::is_some));
}
