use std::collections::VecDeque;

use super::{Graph, NodeSet};

/// Connected components of some subgraph. Component ids are assigned in
/// ascending order of each component's smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    component_of: Vec<Option<usize>>,
    members: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub(crate) fn from_members(n: usize, members: Vec<Vec<usize>>) -> Self {
        let mut component_of = vec![None; n];
        for (id, list) in members.iter().enumerate() {
            for &v in list {
                component_of[v] = Some(id);
            }
        }
        Self {
            component_of,
            members,
        }
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// `None` when `v` is not part of the partitioned vertex set.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.component_of[v]
    }

    /// Sorted members of component `id`.
    pub fn members(&self, id: usize) -> &[usize] {
        &self.members[id]
    }

    pub fn components(&self) -> impl Iterator<Item = &[usize]> {
        self.members.iter().map(Vec::as_slice)
    }

    pub fn member_set(&self, id: usize) -> NodeSet {
        NodeSet::from_vertices(self.component_of.len(), self.members[id].iter().copied())
    }
}

/// Components of `G[s]`; `count()` is p(s).
pub fn induced_components(g: &Graph, s: &NodeSet) -> ComponentPartition {
    partition(g, s.iter(), |u, v| s.contains(u) && s.contains(v))
}

/// Components of the spanning subgraph on all vertices that keeps exactly the
/// edges with at least one endpoint in `s`; `count()` is q(s).
pub fn closed_components(g: &Graph, s: &NodeSet) -> ComponentPartition {
    partition(g, 0..g.n(), |u, v| s.contains(u) || s.contains(v))
}

fn partition(
    g: &Graph,
    vertices: impl Iterator<Item = usize>,
    keep_edge: impl Fn(usize, usize) -> bool,
) -> ComponentPartition {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut members = Vec::new();
    let mut queue = VecDeque::new();
    for root in vertices {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] && keep_edge(u, v) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        members.push(comp);
    }
    ComponentPartition::from_members(n, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::p8;

    fn labels(vs: &[usize]) -> NodeSet {
        NodeSet::from_vertices(8, vs.iter().map(|v| v - 1))
    }

    #[test]
    fn induced_on_p8() {
        let g = p8();
        assert_eq!(induced_components(&g, &NodeSet::new(8)).count(), 0);
        assert_eq!(induced_components(&g, &labels(&[4])).count(), 1);
        // labels 1 and 3 are adjacent, 5 is alone
        let parts = induced_components(&g, &labels(&[1, 3, 5]));
        assert_eq!(parts.count(), 2);
        assert_eq!(parts.members(0), &[0, 2]);
        assert_eq!(parts.members(1), &[4]);
        assert_eq!(parts.component_of(1), None);
    }

    #[test]
    fn closed_on_p8() {
        let g = p8();
        assert_eq!(closed_components(&g, &NodeSet::new(8)).count(), 8);
        let parts = closed_components(&g, &labels(&[4]));
        assert_eq!(parts.count(), 4);
        assert_eq!(parts.members(0), &[0]);
        assert_eq!(parts.members(1), &[1, 2, 3, 4, 7]);
        let parts = closed_components(&g, &labels(&[2, 4]));
        assert_eq!(parts.count(), 2);
        assert_eq!(parts.members(1), &[5]);
    }
}
