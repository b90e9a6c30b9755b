//! Independent oracles shared by the integration tests. Nothing here calls the solver.
#![allow(dead_code)]

use rzf_core::{BlueSet, WeightedDigraph};

pub fn mask_of(set: &BlueSet) -> usize {
    set.to_mask().unwrap() as usize
}

/// Probability that white `w` turns blue from blue mask `b`, straight from the definition.
pub fn flip_prob(g: &WeightedDigraph, b: usize, w: usize) -> f64 {
    let n = g.order();
    let total: f64 = (0..n).map(|u| g.weight(u, w)).sum();
    if total == 0.0 {
        return 0.0;
    }
    let blue: f64 = (0..n).filter(|&u| b >> u & 1 == 1).map(|u| g.weight(u, w)).sum();
    blue / total
}

/// Full one-step law from `b` as `(successor mask, probability)` pairs.
pub fn successors(g: &WeightedDigraph, b: usize) -> Vec<(usize, f64)> {
    let n = g.order();
    let white: Vec<usize> = (0..n).filter(|&w| b >> w & 1 == 0).collect();
    let probs: Vec<f64> = white.iter().map(|&w| flip_prob(g, b, w)).collect();
    let mut out = Vec::new();
    for sub in 0..1usize << white.len() {
        let mut p = 1.0;
        let mut next = b;
        for (i, &w) in white.iter().enumerate() {
            if sub >> i & 1 == 1 {
                p *= probs[i];
                next |= 1 << w;
            } else {
                p *= 1.0 - probs[i];
            }
        }
        if p > 0.0 {
            out.push((next, p));
        }
    }
    out
}

/// Expected absorption time by Gaussian elimination on the reachable chain, or `None`
/// when the all-blue state is not reached with probability one.
pub fn brute_force_ept(g: &WeightedDigraph, start: usize) -> Option<f64> {
    let n = g.order();
    let full = (1usize << n) - 1;
    let mut states = vec![start];
    let mut index = std::collections::HashMap::from([(start, 0usize)]);
    let mut i = 0;
    while i < states.len() {
        for (s, _) in successors(g, states[i]) {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(s) {
                e.insert(states.len());
                states.push(s);
            }
        }
        i += 1;
    }
    if !index.contains_key(&full) {
        return None;
    }
    // every reachable state must be able to reach `full`
    for &s in &states {
        if s != full && successors(g, s).iter().all(|&(t, _)| t == s) {
            return None;
        }
    }
    let m = states.len();
    let mut a = vec![vec![0.0; m + 1]; m];
    for (r, &s) in states.iter().enumerate() {
        a[r][r] += 1.0;
        if s == full {
            continue;
        }
        a[r][m] = 1.0;
        for (t, p) in successors(g, s) {
            a[r][index[&t]] -= p;
        }
    }
    for col in 0..m {
        let piv = (col..m).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        a.swap(col, piv);
        let d = a[col][col];
        if d.abs() < 1e-300 {
            return None;
        }
        for r in 0..m {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col] / d;
                let pivot_row = a[col].clone();
                for (x, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * p;
                }
            }
        }
    }
    Some(a[0][m] / a[0][0])
}

/// Whether some simple directed cycle avoids `v`, by exhaustive path search.
pub fn cycle_avoiding(g: &WeightedDigraph, v: usize) -> bool {
    let n = g.order();
    fn dfs(g: &WeightedDigraph, root: usize, x: usize, banned: usize, seen: &mut Vec<bool>) -> bool {
        for &(y, _) in g.out_edges(x) {
            if y == banned {
                continue;
            }
            if y == root {
                return true;
            }
            if y > root && !seen[y] {
                seen[y] = true;
                if dfs(g, root, y, banned, seen) {
                    return true;
                }
                seen[y] = false;
            }
        }
        false
    }
    (0..n).filter(|&r| r != v).any(|r| {
        let mut seen = vec![false; n];
        seen[r] = true;
        dfs(g, r, r, v, &mut seen)
    })
}

/// Every member of `set` has a positive-weight in-neighbor inside `set`.
pub fn is_fort_by_definition(g: &WeightedDigraph, set: &BlueSet) -> bool {
    set.iter().all(|v| (0..g.order()).any(|u| set.contains(u) && g.weight(u, v) > 0.0))
}

/// Directed BFS distances from `v` (`usize::MAX` when unreachable).
pub fn distances(g: &WeightedDigraph, v: usize) -> Vec<usize> {
    let n = g.order();
    let mut d = vec![usize::MAX; n];
    d[v] = 0;
    let mut frontier = vec![v];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in frontier {
            for y in 0..n {
                if g.weight(x, y) > 0.0 && d[y] == usize::MAX {
                    d[y] = d[x] + 1;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    d
}

pub fn bipath(n: usize) -> WeightedDigraph {
    WeightedDigraph::bidirected(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> WeightedDigraph {
    WeightedDigraph::bidirected(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
}
