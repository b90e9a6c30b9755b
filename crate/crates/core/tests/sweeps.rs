mod common;

use std::collections::HashSet;

use common::{brute_force_ept, cycle_avoiding, distances};
use rayon::prelude::*;
use rzf_core::bounds::{
    degree_bound, edge_bound, edge_join_bound, join_upper_bound, pendant_source_formula, radius_bound_and_equality,
    weight_bound,
};
use rzf_core::enumerate::{all_digraphs, canonical_form, random_digraph, random_rooted_digraph};
use rzf_core::families::{attach_pendant_sink, attach_pendant_source, edge_join, join_at_hub, FamilySpec};
use rzf_core::graph::{is_finite_ept, min_incoming_share};
use rzf_core::{exact_ept, min_ept, singleton_profile, BlueSet, WeightedDigraph};

fn labeled(n: usize, loops: bool) -> Vec<WeightedDigraph> {
    (1..=n).flat_map(|k| all_digraphs(k, loops).unwrap()).collect()
}

#[test]
fn finiteness_matches_reachability_exhaustively() {
    let failures: usize = labeled(4, true)
        .par_iter()
        .map(|g| {
            let n = g.order();
            (1..1u64 << n)
                .filter(|&m| {
                    let s = BlueSet::from_mask(n, m);
                    is_finite_ept(g, &s).unwrap() != exact_ept(g, &s).unwrap().is_finite()
                })
                .count()
        })
        .sum();
    assert_eq!(failures, 0);
}

#[test]
fn finiteness_matches_the_linear_solve_on_three_vertices() {
    for g in all_digraphs(3, true).unwrap() {
        for m in 1..8 {
            let dp = exact_ept(&g, &BlueSet::from_mask(3, m)).unwrap();
            assert_eq!(dp.is_finite(), brute_force_ept(&g, m as usize).is_some(), "{g:?} {m}");
        }
    }
}

#[test]
fn edge_and_radius_bounds_exhaustively() {
    let graphs = labeled(4, false);
    let bad: Vec<String> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let profile = singleton_profile(g).unwrap();
            let mut bad = Vec::new();
            for (v, &ept) in profile.iter().enumerate() {
                let d = distances(g, v);
                let ecc = d.iter().copied().max().unwrap();
                if ept.is_finite() {
                    let upper = edge_bound(g, v).unwrap().check(ept);
                    if upper.satisfied != Some(true) {
                        bad.push(format!("edge bound {g:?} v={v}"));
                    }
                    assert!(ecc != usize::MAX);
                    if ept.as_f64() < ecc as f64 - 1e-9 {
                        bad.push(format!("radius bound {g:?} v={v}"));
                    }
                }
                // the cycle condition is necessary for equality
                let structural = ecc != usize::MAX && !cycle_avoiding(g, v);
                let equal = ept.is_finite() && (ept.as_f64() - ecc as f64).abs() <= 1e-9;
                if equal && !structural {
                    bad.push(format!("radius equality without cycle condition {g:?} v={v}"));
                }
                // equality iff the slowest realization finishes by the eccentricity
                let sharp = ecc != usize::MAX && slowest_round(g, v) == Some(ecc);
                if sharp != equal {
                    bad.push(format!("radius equality {g:?} v={v}: ept {ept}, ecc {ecc}"));
                }
                let report = radius_bound_and_equality(g, v, Some(ept)).unwrap();
                if !report.consistent() || report.structural_equality != structural || report.sharp_equality != sharp {
                    bad.push(format!("radius report {g:?} v={v}"));
                }
            }
            bad
        })
        .collect();
    assert!(bad.is_empty(), "{} failures, first: {:?}", bad.len(), bad.first());
}

/// Longest directed path from `v` with `v` allowed only at the start, or `None` when a
/// cycle avoiding `v` is reachable. A vertex is certainly blue one round after all of its
/// in-neighbors, and that is also the latest it can happen with positive probability.
fn slowest_round(g: &WeightedDigraph, v: usize) -> Option<usize> {
    let n = g.order();
    let mut latest = vec![None; n];
    latest[v] = Some(0);
    for _ in 0..n {
        for w in (0..n).filter(|&w| w != v) {
            let ins: Vec<usize> = (0..n).filter(|&u| g.weight(u, w) > 0.0).collect();
            if ins.is_empty() {
                continue;
            }
            if let Some(t) = ins.iter().map(|&u| latest[u]).collect::<Option<Vec<usize>>>() {
                latest[w] = Some(1 + t.into_iter().max().unwrap());
            }
        }
    }
    latest.into_iter().collect::<Option<Vec<_>>>().map(|t| t.into_iter().max().unwrap())
}

#[test]
fn cycle_condition_alone_does_not_give_equality() {
    let g = WeightedDigraph::unweighted(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
    assert!(!cycle_avoiding(&g, 0));
    assert_eq!(distances(&g, 0), vec![0, 1, 1]);
    assert!((exact_ept(&g, &BlueSet::singleton(3, 0).unwrap()).unwrap().as_f64() - 1.5).abs() < 1e-12);
}

#[test]
fn minimum_one_only_for_out_stars_with_edges_into_the_center() {
    for n in 2..=4 {
        let stars: HashSet<u64> = (0..1u32 << (n - 1))
            .map(|back| {
                let out = (1..n).map(|i| (0, i));
                let into = (1..n).filter(|i| back >> (i - 1) & 1 == 1).map(|i| (i, 0));
                canonical_form(&WeightedDigraph::unweighted(n, out.chain(into)).unwrap()).unwrap()
            })
            .collect();
        let mut seen = HashSet::new();
        let mut hits = HashSet::new();
        for g in all_digraphs(n, false).unwrap() {
            let c = canonical_form(&g).unwrap();
            if !seen.insert(c) {
                continue;
            }
            let (best, _) = min_ept(&g).unwrap();
            if best.is_finite() && (best.as_f64() - 1.0).abs() <= 1e-12 {
                hits.insert(c);
            }
            assert!(!best.is_finite() || best.as_f64() >= 1.0 - 1e-12);
        }
        assert_eq!(hits, stars, "n = {n}");
    }
}

#[test]
fn max_indegree_bound_exhaustively() {
    for g in labeled(4, false) {
        let (best, _) = min_ept(&g).unwrap();
        let d = g.vertices().map(|v| g.in_degree(v)).max().unwrap();
        if best.is_finite() {
            assert!(best.as_f64() <= degree_bound(g.order(), d) + 1e-9, "{g:?}: {best}");
        }
    }
}

#[test]
fn weight_bound_on_random_graphs() {
    for seed in 0..400 {
        let n = 2 + seed as usize % 6;
        let g = random_digraph(n, 0.5, true, seed).unwrap();
        let (best, _) = min_ept(&g).unwrap();
        if let (true, Some(w)) = (best.is_finite(), min_incoming_share(&g)) {
            let bound = weight_bound(n, w).unwrap();
            assert!(best.as_f64() <= bound + 1e-9, "seed {seed}: {best} > {bound}");
        }
    }
}

#[test]
fn pendant_sink_moves_the_time_by_at_most_one() {
    for seed in 0..300 {
        let n = 2 + seed as usize % 5;
        let g = random_rooted_digraph(n, 0.3, seed % 3 == 0, seed).unwrap();
        let s = BlueSet::singleton(n, 0).unwrap();
        let base = exact_ept(&g, &s).unwrap().as_f64();
        let (h, _) = attach_pendant_sink(&g, seed as usize % n).unwrap();
        let with = exact_ept(&h, &BlueSet::singleton(n + 1, 0).unwrap()).unwrap().as_f64();
        assert!(base - 1e-9 <= with && with <= base + 1.0 + 1e-9, "seed {seed}: {base} -> {with}");
    }
}

#[test]
fn pendant_source_formula_is_exact() {
    for seed in 0..100 {
        let n = 2 + seed as usize % 5;
        let g = random_rooted_digraph(n, 0.3, true, seed).unwrap();
        let w = 0.25 + (seed % 7) as f64;
        let (h, b) = attach_pendant_source(&g, 0, w).unwrap();
        let inner = exact_ept(&g, &BlueSet::singleton(n, 0).unwrap()).unwrap().as_f64();
        let value = exact_ept(&h, &BlueSet::singleton(n + 1, b).unwrap()).unwrap().as_f64();
        let formula = pendant_source_formula(inner, g.in_weight(0), w).unwrap();
        assert!((value - formula).abs() <= 1e-9 * formula, "seed {seed}: {value} vs {formula}");
    }
}

#[test]
fn edge_join_bound_holds() {
    for seed in 0..100 {
        let (a, b) = (2 + seed as usize % 3, 2 + (seed as usize / 3) % 3);
        let g = random_rooted_digraph(a, 0.4, true, seed).unwrap();
        let h = random_rooted_digraph(b, 0.4, true, seed + 1000).unwrap();
        let w = 0.5 + (seed % 4) as f64;
        let joined = edge_join(&g, &h, seed as usize % a, 0, w).unwrap();
        let value = exact_ept(&joined, &BlueSet::singleton(a + b, 0).unwrap()).unwrap().as_f64();
        let eg = exact_ept(&g, &BlueSet::singleton(a, 0).unwrap()).unwrap().as_f64();
        let eh = exact_ept(&h, &BlueSet::singleton(b, 0).unwrap()).unwrap().as_f64();
        let bound = edge_join_bound(eg, eh, h.in_weight(0), w).unwrap();
        assert!(value <= bound + 1e-9, "seed {seed}: {value} > {bound}");
    }
}

#[test]
fn join_bound_holds_for_two_components() {
    for seed in 0..60 {
        let sizes = [2 + seed as usize % 3, 2 + (seed as usize / 3) % 3];
        let parts: Vec<WeightedDigraph> =
            sizes.iter().enumerate().map(|(i, &k)| random_rooted_digraph(k, 0.4, false, seed * 7 + i as u64).unwrap()).collect();
        let (joined, hub) = join_at_hub(&parts, &[0, 0], 1.0).unwrap();
        let value = exact_ept(&joined, &BlueSet::singleton(joined.order(), hub).unwrap()).unwrap().as_f64();
        let mut epts = Vec::new();
        let mut vars = Vec::new();
        let mut indeg = Vec::new();
        for p in &parts {
            let first = exact_ept(p, &BlueSet::singleton(p.order(), 0).unwrap()).unwrap().as_f64();
            let second = second_moment(p);
            epts.push(first);
            vars.push(second - first * first);
            indeg.push(p.in_weight(0) + 1.0);
        }
        let bound = join_upper_bound(&epts, &vars, &indeg).unwrap();
        assert!(value <= bound + 1e-9, "seed {seed}: {value} > {bound}");
    }
}

/// `E[T^2]` from vertex 0 by first-step analysis over the full subset chain.
fn second_moment(g: &WeightedDigraph) -> f64 {
    let n = g.order();
    let full = (1usize << n) - 1;
    let mut t1 = vec![0.0; 1 << n];
    let mut t2 = vec![0.0; 1 << n];
    let mut order: Vec<usize> = (1..=full).collect();
    order.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for b in order {
        if b == full {
            continue;
        }
        let succ = common::successors(g, b);
        let stay: f64 = succ.iter().filter(|s| s.0 == b).map(|s| s.1).sum();
        if stay >= 1.0 {
            t1[b] = f64::INFINITY;
            t2[b] = f64::INFINITY;
            continue;
        }
        let moved = |f: &dyn Fn(usize) -> f64| succ.iter().filter(|s| s.0 != b).map(|s| s.1 * f(s.0)).sum::<f64>();
        // T = 1 + T' with T' the time from the next state (including a stay)
        let e1 = (1.0 + moved(&|s| t1[s])) / (1.0 - stay);
        let e2 = (1.0 + 2.0 * (moved(&|s| t1[s]) + stay * e1) + moved(&|s| t2[s])) / (1.0 - stay);
        t1[b] = e1;
        t2[b] = e2;
    }
    t2[1]
}

#[test]
fn second_moment_of_a_directed_path() {
    // deterministic: T = n - 1
    let g = FamilySpec::UniPath { order: 5 }.build().unwrap();
    assert!((second_moment(&g) - 16.0).abs() < 1e-9);
}

#[test]
fn complete_bipartite_fitted_constant() {
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for m in 2..=7 {
        for n in m..=7 {
            let g = common::complete_bipartite(m, n);
            let profile = singleton_profile(&g).unwrap();
            let top = profile.iter().map(|e| e.as_f64()).fold(0.0, f64::max);
            let scale = (m as f64 * (n as f64).ln()).min(n as f64 * (m as f64).ln());
            let c = top / scale;
            worst = worst.max(c);
            rows.push(format!("K_{m},{n}: max ept {top:.6}, ratio {c:.4}"));
        }
    }
    println!("{}\nfitted C = {worst:.4}", rows.join("\n"));
    assert!(worst.is_finite() && worst > 0.0);
}
