use super::{Graph, NodeSet};
use crate::error::{Error, Result};

/// Open ear decomposition: a starting cycle followed by H-paths, each meeting
/// the graph built so far exactly in its two (distinct) endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    /// Cycle as a vertex sequence; the closing edge back to `cycle[0]` is implicit.
    pub cycle: Vec<usize>,
    pub ears: Vec<Vec<usize>>,
}

impl EarDecomposition {
    /// Checks the structural invariants against `g`: cycle and ear edges exist,
    /// ear interiors are new, ear endpoints are distinct and already present,
    /// and every vertex of `g` is covered.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let n = g.n();
        let mut built = NodeSet::new(n);
        if self.cycle.len() < 3 {
            return Err(format!("cycle has {} vertices", self.cycle.len()));
        }
        for (i, &v) in self.cycle.iter().enumerate() {
            if v >= n || !built.insert(v) {
                return Err(format!("cycle repeats or leaves the graph at {v}"));
            }
            let next = self.cycle[(i + 1) % self.cycle.len()];
            if !g.has_edge(v, next) {
                return Err(format!("cycle edge ({v}, {next}) missing"));
            }
        }
        for (k, ear) in self.ears.iter().enumerate() {
            let (Some(&first), Some(&last)) = (ear.first(), ear.last()) else {
                return Err(format!("ear {k} is empty"));
            };
            if ear.len() < 2 || first == last {
                return Err(format!("ear {k} has coinciding or missing endpoints"));
            }
            if !built.contains(first) || !built.contains(last) {
                return Err(format!("ear {k} endpoint not yet constructed"));
            }
            for pair in ear.windows(2) {
                if !g.has_edge(pair[0], pair[1]) {
                    return Err(format!("ear {k} edge ({}, {}) missing", pair[0], pair[1]));
                }
            }
            for &v in &ear[1..ear.len() - 1] {
                if v >= n || !built.insert(v) {
                    return Err(format!("ear {k} interior vertex {v} already present"));
                }
            }
        }
        if built.len() != n {
            return Err(format!("{} of {n} vertices covered", built.len()));
        }
        Ok(())
    }

    /// Edges of the graph assembled from the decomposition, as `(min, max)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let order = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut out: Vec<_> = (0..self.cycle.len())
            .map(|i| order(self.cycle[i], self.cycle[(i + 1) % self.cycle.len()]))
            .collect();
        for ear in &self.ears {
            out.extend(ear.windows(2).map(|p| order(p[0], p[1])));
        }
        out.sort_unstable();
        out
    }
}

/// Chain decomposition over a depth-first search tree. The graph is
/// biconnected exactly when it is connected, every edge lies on some chain and
/// only the first chain closes into a cycle; in that case the chains form an
/// open ear decomposition.
pub fn ear_decomposition(g: &Graph) -> Result<EarDecomposition> {
    let n = g.n();
    if n < 3 {
        return Err(Error::TooFewVertices { n });
    }

    const NONE: usize = usize::MAX;
    let mut disc = vec![NONE; n];
    let mut parent = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![(0usize, 0usize)];
    disc[0] = 0;
    order.push(0);
    while let Some((v, next)) = stack.last_mut() {
        let v = *v;
        if let Some(&w) = g.neighbors(v).get(*next) {
            *next += 1;
            if disc[w] == NONE {
                disc[w] = order.len();
                parent[w] = v;
                order.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    if order.len() < n {
        return Err(Error::NotBiconnected { cut_vertex: None });
    }

    let mut visited = vec![false; n];
    let mut tree_edge_used = vec![false; n];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        for &w in g.neighbors(v) {
            // back edge v -> w, with v an ancestor of w
            if disc[w] <= disc[v] || parent[w] == v {
                continue;
            }
            visited[v] = true;
            let mut chain = vec![v];
            let mut cur = w;
            loop {
                chain.push(cur);
                if visited[cur] {
                    break;
                }
                visited[cur] = true;
                tree_edge_used[cur] = true;
                cur = parent[cur];
            }
            if chain.first() == chain.last() && !chains.is_empty() {
                return Err(Error::NotBiconnected {
                    cut_vertex: Some(v),
                });
            }
            chains.push(chain);
        }
    }
    if let Some(bridge_child) = (1..n).map(|i| order[i]).find(|&c| !tree_edge_used[c]) {
        let p = parent[bridge_child];
        let cut = if g.degree(p) > 1 { p } else { bridge_child };
        return Err(Error::NotBiconnected {
            cut_vertex: Some(cut),
        });
    }

    let mut chains = chains.into_iter();
    let mut cycle = chains
        .next()
        .expect("connected bridgeless graph has a back edge");
    cycle.pop();
    Ok(EarDecomposition {
        cycle: canonical_cycle(cycle),
        ears: chains.collect(),
    })
}

/// Rotates to start at the smallest vertex and orients toward the smaller neighbor.
fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    let start = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(start);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn triangle_is_one_cycle() {
        let ears = ear_decomposition(&triangle()).unwrap();
        assert_eq!(ears.cycle, vec![0, 1, 2]);
        assert!(ears.ears.is_empty());
    }

    #[test]
    fn p8_decomposes_and_reassembles() {
        let g = p8();
        let ears = ear_decomposition(&g).unwrap();
        ears.validate(&g).unwrap();
        assert_eq!(ears.edges(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn star_is_rejected() {
        assert!(matches!(
            ear_decomposition(&star(3)),
            Err(Error::NotBiconnected { .. })
        ));
    }

    #[test]
    fn bowtie_reports_shared_vertex() {
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(
            ear_decomposition(&g),
            Err(Error::NotBiconnected {
                cut_vertex: Some(2)
            })
        );
    }

    #[test]
    fn tiny_and_disconnected_inputs() {
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(
            ear_decomposition(&edge),
            Err(Error::TooFewVertices { n: 2 })
        );
        let split = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(
            ear_decomposition(&split),
            Err(Error::NotBiconnected { cut_vertex: None })
        );
    }

    #[test]
    fn validate_catches_bad_ears() {
        let g = p8();
        let bad = EarDecomposition {
            cycle: vec![0, 1, 3, 2],
            ears: vec![vec![3, 4, 5, 6, 1], vec![6, 7, 6]],
        };
        assert!(bad.validate(&g).is_err());
    }
}
