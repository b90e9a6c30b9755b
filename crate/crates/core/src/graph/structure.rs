use std::collections::VecDeque;

use super::{BlueSet, VertexId, WeightedDigraph};
use crate::error::{Result, RzfError};

/// Vertices reachable from `start` along positive-weight directed paths (`start` included).
pub fn reachable_set(g: &WeightedDigraph, start: &BlueSet) -> Result<BlueSet> {
    g.check_set(start)?;
    if start.is_empty() {
        return Err(RzfError::EmptyStart);
    }
    let mut seen = start.clone();
    let mut queue: VecDeque<VertexId> = start.iter().collect();
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.out_edges(u) {
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    Ok(seen)
}

/// Whether the process started from `start` reaches the all-blue state with probability one,
/// which holds exactly when every vertex is reachable from `start` in the positive subgraph.
pub fn is_finite_ept(g: &WeightedDigraph, start: &BlueSet) -> Result<bool> {
    Ok(reachable_set(g, start)?.is_full())
}

fn bfs_distances(g: &WeightedDigraph, source: VertexId) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap_or_default();
        for &(v, _) in g.out_edges(u) {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Largest directed distance from `v`; `None` when some vertex is unreachable.
pub fn eccentricity(g: &WeightedDigraph, v: VertexId) -> Result<Option<usize>> {
    g.check_vertex(v)?;
    let dist = bfs_distances(g, v);
    Ok(dist.iter().try_fold(0, |acc, d| d.map(|d| acc.max(d))))
}

/// Minimum eccentricity over all vertices; `None` when no vertex reaches all others.
pub fn radius(g: &WeightedDigraph) -> Option<usize> {
    g.vertices().filter_map(|v| eccentricity(g, v).ok().flatten()).min()
}

/// Round at which the slowest realization from `start` finishes, or `None` if it never does.
///
/// In the slowest realization a white vertex turns blue only once all of its in-neighbors
/// are blue (probability one); every other outcome has positive probability of being
/// postponed, so this is the largest absorption round with positive probability.
pub fn slowest_completion_round(g: &WeightedDigraph, start: &BlueSet) -> Result<Option<usize>> {
    g.check_set(start)?;
    if start.is_empty() {
        return Err(RzfError::EmptyStart);
    }
    let mut blue = start.clone();
    let mut rounds = 0;
    while !blue.is_full() {
        let forced: Vec<VertexId> = blue
            .iter_white()
            .filter(|&w| !g.in_edges(w).is_empty() && g.in_edges(w).iter().all(|&(u, _)| blue.contains(u)))
            .collect();
        if forced.is_empty() {
            return Ok(None);
        }
        for w in forced {
            blue.insert(w);
        }
        rounds += 1;
    }
    Ok(Some(rounds))
}

/// True iff deleting `v` leaves an acyclic graph, i.e. every directed cycle
/// (self-loops included) passes through `v`.
pub fn every_cycle_through(g: &WeightedDigraph, v: VertexId) -> Result<bool> {
    g.check_vertex(v)?;
    let n = g.order();
    let mut indeg = vec![0usize; n];
    for (a, b, _) in g.edges() {
        if a != v && b != v {
            indeg[b] += 1;
        }
    }
    let mut queue: VecDeque<VertexId> = (0..n).filter(|&x| x != v && indeg[x] == 0).collect();
    let mut removed = 0;
    while let Some(u) = queue.pop_front() {
        removed += 1;
        for &(w, _) in g.out_edges(u) {
            if w == v {
                continue;
            }
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    Ok(removed == n - 1)
}

/// True iff every member of `set` has a positive-weight in-neighbor inside `set`.
/// The empty set is vacuously a fort.
pub fn is_fort(g: &WeightedDigraph, set: &BlueSet) -> bool {
    set.iter().all(|v| g.in_edges(v).iter().any(|&(u, _)| set.contains(u)))
}

/// The largest fort contained in `within`, found by repeatedly discarding members
/// that have no in-neighbor among the remaining members. May be empty.
pub fn maximal_fort(g: &WeightedDigraph, within: &BlueSet) -> Result<BlueSet> {
    g.check_set(within)?;
    let mut current = within.clone();
    let mut support: Vec<usize> = (0..g.order())
        .map(|v| g.in_edges(v).iter().filter(|&&(u, _)| current.contains(u)).count())
        .collect();
    let mut queue: VecDeque<VertexId> = current.iter().filter(|&v| support[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        if !current.remove(v) {
            continue;
        }
        for &(w, _) in g.out_edges(v) {
            if current.contains(w) {
                support[w] -= 1;
                if support[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(current)
}

/// Strongly connected components in reverse topological order of the condensation.
pub fn strongly_connected_components(g: &WeightedDigraph) -> Vec<Vec<VertexId>> {
    // Iterative Tarjan.
    let n = g.order();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut frames: Vec<(VertexId, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut pos)) = frames.last_mut() {
            if let Some(&(w, _)) = g.out_edges(u).get(*pos) {
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[u] = low[u].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                let mut comp = Vec::new();
                while let Some(x) = stack.pop() {
                    on_stack[x] = false;
                    comp.push(x);
                    if x == u {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    components
}

fn shortest_cycle_through(g: &WeightedDigraph, v: VertexId) -> Option<Vec<VertexId>> {
    if g.has_edge(v, v) {
        return Some(vec![v]);
    }
    let mut parent = vec![usize::MAX; g.order()];
    let mut queue = VecDeque::new();
    for &(w, _) in g.out_edges(v) {
        if parent[w] == usize::MAX {
            parent[w] = v;
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        if g.has_edge(u, v) {
            let mut cycle = vec![u];
            let mut x = u;
            while parent[x] != v {
                x = parent[x];
                cycle.push(x);
            }
            cycle.push(v);
            cycle.sort_unstable();
            return Some(cycle);
        }
        for &(w, _) in g.out_edges(u) {
            if w != v && parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Searches for two nonempty, vertex-disjoint forts.
///
/// Candidates for the first fort are shortest cycles through each vertex and the
/// nontrivial strongly connected components, smallest first; the second fort is the
/// maximal fort of the complement. `None` means "not found", not "none exist".
pub fn find_disjoint_forts(g: &WeightedDigraph) -> Option<(BlueSet, BlueSet)> {
    let n = g.order();
    let mut candidates: Vec<Vec<VertexId>> = g.vertices().filter_map(|v| shortest_cycle_through(g, v)).collect();
    candidates.extend(
        strongly_connected_components(g)
            .into_iter()
            .filter(|c| c.len() > 1 || g.has_edge(c[0], c[0])),
    );
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    candidates.dedup();
    for cand in candidates {
        let seed = BlueSet::from_vertices(n, cand).expect("candidate vertices are in range");
        let first = maximal_fort(g, &seed).expect("orders match");
        if first.is_empty() {
            continue;
        }
        let second = maximal_fort(g, &first.complement()).expect("orders match");
        if !second.is_empty() {
            return Some((first, second));
        }
    }
    None
}
