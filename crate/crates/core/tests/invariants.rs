mod common;

use common::{cycle_avoiding, flip_prob, is_fort_by_definition};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rzf_core::graph::{
    every_cycle_through, find_disjoint_forts, is_effectively_unweighted, positive_subgraph, scale_incoming,
};
use rzf_core::process::{replica_rng, run_to_absorption, step_coupled, success_probability, transition_profile};
use rzf_core::{exact_ept, BlueSet, EptValue, WeightedDigraph};

/// Digraph on `n` vertices from a cell list: `None` is no edge, `Some(w)` an edge of weight `w`
/// (zero allowed). Self-loops are kept when `loops` is set.
fn graph_from_cells(n: usize, cells: &[Option<f64>], loops: bool) -> WeightedDigraph {
    let edges = (0..n * n).filter_map(|i| {
        let (u, v) = (i / n, i % n);
        if u == v && !loops {
            return None;
        }
        cells[i].map(|w| (u, v, w))
    });
    WeightedDigraph::new(n, edges).unwrap()
}

fn weight_cell() -> impl Strategy<Value = Option<f64>> {
    prop_oneof![
        3 => Just(None),
        1 => Just(Some(0.0)),
        3 => (0.05f64..5.0).prop_map(Some),
    ]
}

fn digraph(max_n: usize, loops: bool) -> impl Strategy<Value = WeightedDigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(weight_cell(), n * n).prop_map(move |cells| graph_from_cells(n, &cells, loops))
    })
}

fn with_set(max_n: usize, loops: bool) -> impl Strategy<Value = (WeightedDigraph, u64)> {
    digraph(max_n, loops).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 1u64..(1 << n))
    })
}

fn all_sets(n: usize) -> impl Iterator<Item = BlueSet> {
    (0..1u64 << n).map(move |m| BlueSet::from_mask(n, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn success_probability_follows_the_definition((g, mask) in with_set(7, true)) {
        let b = BlueSet::from_mask(g.order(), mask);
        for w in b.iter_white() {
            let p = success_probability(&g, &b, w);
            prop_assert!((0.0..=1.0).contains(&p));
            prop_assert!((p - flip_prob(&g, mask as usize, w)).abs() <= 1e-12);
        }
    }

    #[test]
    fn positive_subgraph_is_idempotent_and_invisible(g in digraph(8, true)) {
        let pos = positive_subgraph(&g);
        prop_assert_eq!(&positive_subgraph(&pos), &pos);
        prop_assert!(pos.edges().all(|(_, _, w)| w > 0.0));
        for b in all_sets(g.order()).step_by(3) {
            prop_assert_eq!(transition_profile(&g, &b).unwrap(), transition_profile(&pos, &b).unwrap());
        }
    }

    #[test]
    fn incoming_scaling_leaves_profiles_unchanged(g in digraph(6, true), v in 0usize..6, lambda in 0.01f64..100.0) {
        let v = v % g.order();
        let scaled = scale_incoming(&g, v, lambda).unwrap();
        for b in all_sets(g.order()) {
            let diff = transition_profile(&g, &b).unwrap().max_abs_diff(&transition_profile(&scaled, &b).unwrap());
            prop_assert!(diff <= 1e-12);
        }
    }

    #[test]
    fn uniform_in_weights_follow_the_counting_rule(
        n in 2usize..=6,
        cells in prop::collection::vec(any::<bool>(), 36),
        per_vertex in prop::collection::vec(0.1f64..9.0, 6),
    ) {
        let edges: Vec<_> = (0..n * n)
            .filter(|&i| cells[i] && i / n != i % n)
            .map(|i| (i / n, i % n, per_vertex[i % n]))
            .collect();
        let g = WeightedDigraph::new(n, edges).unwrap();
        prop_assert!(is_effectively_unweighted(&g));
        for b in all_sets(n) {
            for (w, p) in transition_profile(&g, &b).unwrap().entries().iter().copied() {
                let ins = g.in_edges(w);
                let want = if ins.is_empty() {
                    0.0
                } else {
                    ins.iter().filter(|(u, _)| b.contains(*u)).count() as f64 / ins.len() as f64
                };
                prop_assert!((p - want).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn trajectories_grow_and_replay((g, mask) in with_set(8, false), seed in any::<u64>()) {
        let g = positive_subgraph(&g);
        let s = BlueSet::from_mask(g.order(), mask);
        let t = run_to_absorption(&g, &s, seed, 10_000);
        if rzf_core::graph::is_finite_ept(&g, &s).unwrap() {
            let t = t.unwrap();
            prop_assert!(t.absorbed);
            prop_assert!(t.states.windows(2).all(|w| w[0].is_subset(&w[1]) && w[0] != w[1]));
            prop_assert!(t.states.last().unwrap().is_full());
            prop_assert!(t.blue_count_series().windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(run_to_absorption(&g, &s, seed, 10_000).unwrap(), t);
        }
    }

    #[test]
    fn nested_starts_stay_nested_under_coupling((g, outer) in with_set(6, false), inner_bits in any::<u64>(), seed in any::<u64>()) {
        let n = g.order();
        let inner = outer & inner_bits;
        let mut b1 = BlueSet::from_mask(n, inner);
        let mut b2 = BlueSet::from_mask(n, outer);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..40 {
            (b1, b2) = step_coupled(&g, &g, &b1, &b2, &mut rng).unwrap();
            prop_assert!(b1.is_subset(&b2));
        }
    }

    #[test]
    fn heavier_blue_out_edges_stay_ahead_under_coupling(
        (g, mask) in with_set(6, false),
        bumps in prop::collection::vec(0.0f64..4.0, 36),
        seed in any::<u64>(),
    ) {
        let n = g.order();
        let s = BlueSet::from_mask(n, mask);
        let heavier = bump_out_of(&g, &s, &bumps);
        let mut b1 = s.clone();
        let mut b2 = s.clone();
        let mut rng = replica_rng(seed, 0);
        for _ in 0..40 {
            (b1, b2) = step_coupled(&g, &heavier, &b1, &b2, &mut rng).unwrap();
            prop_assert!(b1.is_subset(&b2));
        }
    }

    #[test]
    fn dp_is_monotone_in_the_start(g in digraph(5, true), outer in 1u64..32, inner_bits in any::<u64>()) {
        let n = g.order();
        let outer = outer & ((1 << n) - 1);
        let inner = outer & inner_bits;
        prop_assume!(inner != 0);
        let small = exact_ept(&g, &BlueSet::from_mask(n, inner)).unwrap();
        let large = exact_ept(&g, &BlueSet::from_mask(n, outer)).unwrap();
        prop_assert!(large <= EptValue::Finite(small.as_f64() + 1e-9) || !small.is_finite());
    }

    #[test]
    fn dp_is_monotone_in_blue_out_weights((g, mask) in with_set(6, false), bumps in prop::collection::vec(0.0f64..4.0, 36)) {
        let n = g.order();
        let s = BlueSet::from_mask(n, mask);
        let before = exact_ept(&g, &s).unwrap();
        let after = exact_ept(&bump_out_of(&g, &s, &bumps), &s).unwrap();
        if before.is_finite() {
            prop_assert!(after.as_f64() <= before.as_f64() * (1.0 + 1e-9) + 1e-9);
        }
    }

    #[test]
    fn bidirected_cycles_ignore_orientation_weights(n in 3usize..=12, k in 1usize..12, p in 0.01f64..50.0, q in 0.01f64..50.0) {
        let k = 1 + (k - 1) % (n - 1);
        let edges = (0..n).flat_map(|i| [(i, (i + 1) % n, p), ((i + 1) % n, i, q)]);
        let g = WeightedDigraph::new(n, edges).unwrap();
        let e = exact_ept(&g, &BlueSet::from_vertices(n, 0..k).unwrap()).unwrap();
        prop_assert!((e.as_f64() - (n - k) as f64).abs() <= 1e-9);
    }

    #[test]
    fn cycle_test_matches_exhaustive_search(g in digraph(6, false), v in 0usize..6) {
        let g = positive_subgraph(&g);
        let v = v % g.order();
        prop_assert_eq!(every_cycle_through(&g, v).unwrap(), !cycle_avoiding(&g, v));
    }

    #[test]
    fn returned_forts_are_forts(g in digraph(7, true)) {
        if let Some((f1, f2)) = find_disjoint_forts(&g) {
            prop_assert!(!f1.is_empty() && !f2.is_empty() && f1.is_disjoint(&f2));
            prop_assert!(is_fort_by_definition(&g, &f1) && is_fort_by_definition(&g, &f2));
        }
    }
}

/// Adds `bumps[u*n+v]` to every existing positive edge whose tail lies in `s`.
fn bump_out_of(g: &WeightedDigraph, s: &BlueSet, bumps: &[f64]) -> WeightedDigraph {
    let n = g.order();
    let edges: Vec<_> =
        g.edges().map(|(u, v, w)| if s.contains(u) && w > 0.0 { (u, v, w + bumps[u * n + v]) } else { (u, v, w) }).collect();
    WeightedDigraph::new(n, edges).unwrap()
}

#[test]
fn fort_search_finds_the_two_triangles() {
    let g = rzf_core::families::two_triangles();
    let (f1, f2) = find_disjoint_forts(&g).expect("two disjoint forts");
    assert!(is_fort_by_definition(&g, &f1) && is_fort_by_definition(&g, &f2));
    let path = WeightedDigraph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
    assert!(find_disjoint_forts(&path).is_none());
}
