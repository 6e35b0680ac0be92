//! Immutable simple undirected graphs and the structural kernels built on them.

mod articulation;
mod components;
mod ear;
mod nodeset;
mod path;

pub use articulation::{articulation_report, is_biconnected, ArticulationReport};
pub use components::{closed_components, induced_components, ComponentPartition};
pub use ear::{ear_decomposition, EarDecomposition};
pub use nodeset::NodeSet;
pub use path::restricted_shortest_path;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either orientation)
    /// are collapsed; self-loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { u, v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Self {
            adj,
            edge_count: edge_count / 2,
            max_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Maximum vertex degree (Δ).
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertex_set(&self) -> NodeSet {
        NodeSet::full(self.n())
    }

    /// Number of neighbors of `v` inside `set`.
    pub fn neighbors_in(&self, v: usize, set: &NodeSet) -> usize {
        self.adj[v].iter().filter(|&&w| set.contains(w)).count()
    }

    /// Whether some vertex of `set` is adjacent to `v`.
    pub fn is_adjacent_to_set(&self, v: usize, set: &NodeSet) -> bool {
        self.adj[v].iter().any(|&w| set.contains(w))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    /// The eight-node example: 4-cycle 1-2-4-3, ear 4-5-6-7-2, ear 7-8-4,
    /// relabeled to 0-based ids (label `k` becomes vertex `k - 1`).
    pub fn p8() -> Graph {
        let edges = [
            (1, 2),
            (1, 3),
            (2, 4),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (2, 7),
            (7, 8),
            (4, 8),
        ];
        Graph::new(8, edges.iter().map(|&(u, v)| (u - 1, v - 1))).unwrap()
    }

    pub fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn triangle_stats() {
        let g = triangle();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.max_degree(), 2);
    }

    #[test]
    fn p8_has_max_degree_four_at_label_four() {
        let g = p8();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.max_degree(), 4);
        assert_eq!(g.degree(3), 4);
        assert_eq!(g.neighbors(3), &[1, 2, 4, 7]);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(
            Graph::new(3, [(0, 1), (2, 2)]),
            Err(Error::SelfLoop { u: 2, v: 2 })
        );
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { u: 0, v: 3, n: 3 })
        );
    }
}
