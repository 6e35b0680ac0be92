use std::collections::VecDeque;

use super::{Graph, NodeSet};

/// Minimum-hop path starting in `from_set`, ending in `to_set`, whose interior
/// vertices all lie in `allowed_interior` (and outside both end sets). Among
/// shortest paths the lexicographically smallest vertex sequence is returned.
pub fn restricted_shortest_path(
    g: &Graph,
    from_set: &NodeSet,
    to_set: &NodeSet,
    allowed_interior: &NodeSet,
) -> Option<Vec<usize>> {
    const FAR: usize = usize::MAX;
    let n = g.n();
    let interior_ok =
        |v: usize| allowed_interior.contains(v) && !from_set.contains(v) && !to_set.contains(v);

    // Hop distance from each vertex to the target set, through allowed interior.
    let mut dist = vec![FAR; n];
    let mut queue = VecDeque::new();
    for t in to_set.iter() {
        dist[t] = 0;
        queue.push_back(t);
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == FAR && interior_ok(w) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }

    let hop = |v: usize| {
        g.neighbors(v)
            .iter()
            .map(|&w| dist[w])
            .filter(|&d| d != FAR)
            .min()
            .map(|d| d + 1)
    };
    let (best, start) = from_set
        .iter()
        .filter(|&f| !to_set.contains(f))
        .filter_map(|f| hop(f).map(|d| (d, f)))
        .min()?;

    let mut path = vec![start];
    let mut remaining = best;
    let mut cur = start;
    while remaining > 0 {
        remaining -= 1;
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dist[w] == remaining && (remaining == 0 || interior_ok(w)))
            .expect("distance labels are consistent");
        path.push(cur);
    }
    Some(path)
}
