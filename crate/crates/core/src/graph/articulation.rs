use super::{ComponentPartition, Graph, NodeSet};

const UNSEEN: usize = usize::MAX;

/// Cut-vertex structure of `G[s]` from a single low-link pass per component.
#[derive(Clone, Debug)]
pub struct ArticulationReport {
    /// Number of pieces the component of `x` falls into once `x` is deleted.
    /// Zero for singleton components and for vertices outside `s`.
    split: Vec<usize>,
    members: NodeSet,
    components: ComponentPartition,
    blocks: Vec<Vec<usize>>,
    block_cut_edges: Vec<(usize, usize)>,
}

impl ArticulationReport {
    pub fn split_count(&self, x: usize) -> Option<usize> {
        self.members.contains(x).then(|| self.split[x])
    }

    pub fn is_cut(&self, x: usize) -> bool {
        self.members.contains(x) && self.split[x] >= 2
    }

    pub fn cut_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().filter(|&x| self.split[x] >= 2)
    }

    pub fn components(&self) -> &ComponentPartition {
        &self.components
    }

    /// Maximal biconnected pieces (bridges and isolated vertices included as
    /// two- and one-vertex blocks), each sorted.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block-cut tree edges as `(block index, cut vertex)`.
    pub fn block_cut_edges(&self) -> &[(usize, usize)] {
        &self.block_cut_edges
    }

    /// Largest split count, with the smallest vertex attaining it.
    pub fn max_split(&self) -> Option<(usize, usize)> {
        self.members.iter().map(|x| (self.split[x], x)).fold(
            None,
            |best: Option<(usize, usize)>, (s, x)| match best {
                Some((bs, _)) if bs >= s => best,
                _ => Some((s, x)),
            },
        )
    }

    /// p(s ∖ {x}) for a member `x`, derived from its split count.
    pub fn count_without(&self, x: usize) -> Option<usize> {
        self.split_count(x)
            .map(|split| self.components.count() - 1 + split)
    }
}

struct Frame {
    v: usize,
    parent: usize,
    next: usize,
}

/// Split counts, blocks and the block-cut tree of `G[s]`.
pub fn articulation_report(g: &Graph, s: &NodeSet) -> ArticulationReport {
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![UNSEEN; n];
    let mut split = vec![0usize; n];
    let mut time = 0;
    let mut comps = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();

    for root in s.iter() {
        if disc[root] != UNSEEN {
            continue;
        }
        let mut comp = vec![root];
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push(Frame {
            v: root,
            parent: UNSEEN,
            next: 0,
        });
        while let Some(frame) = stack.last_mut() {
            let v = frame.v;
            if let Some(&w) = g.neighbors(v).get(frame.next) {
                frame.next += 1;
                if !s.contains(w) {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    comp.push(w);
                    edge_stack.push((v, w));
                    stack.push(Frame {
                        v: w,
                        parent: v,
                        next: 0,
                    });
                } else if w != frame.parent && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
                continue;
            }
            stack.pop();
            let Some(parent) = stack.last().map(|f| f.v) else {
                continue;
            };
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                split[parent] += 1;
                let mut block = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    block.push(a);
                    block.push(b);
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                block.sort_unstable();
                block.dedup();
                blocks.push(block);
            }
        }
        // Non-root vertices keep the piece containing their parent.
        for &v in &comp {
            if v != root {
                split[v] += 1;
            }
        }
        if comp.len() == 1 {
            blocks.push(vec![root]);
        }
        comp.sort_unstable();
        comps.push(comp);
    }

    blocks.sort();
    let mut block_cut_edges = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        for &v in block {
            if split[v] >= 2 {
                block_cut_edges.push((i, v));
            }
        }
    }
    ArticulationReport {
        split,
        members: s.clone(),
        components: ComponentPartition::from_members(n, comps),
        blocks,
        block_cut_edges,
    }
}

/// `G[s]` is biconnected: at least three vertices, connected, no cut vertex.
pub fn is_biconnected(g: &Graph, s: &NodeSet) -> bool {
    if s.len() < 3 {
        return false;
    }
    let report = articulation_report(g, s);
    report.components().count() == 1 && report.cut_vertices().next().is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::induced_components;

    #[test]
    fn triangle_has_no_cut_vertex() {
        let g = triangle();
        let r = articulation_report(&g, &g.vertex_set());
        assert!((0..3).all(|x| r.split_count(x) == Some(1)));
        assert_eq!(r.cut_vertices().count(), 0);
        assert_eq!(r.blocks(), &[vec![0, 1, 2]]);
        assert!(is_biconnected(&g, &g.vertex_set()));
    }

    #[test]
    fn path_middle_splits_in_two() {
        let g = path(3);
        let r = articulation_report(&g, &g.vertex_set());
        assert_eq!(r.split_count(1), Some(2));
        assert_eq!(r.split_count(0), Some(1));
        assert_eq!(r.split_count(2), Some(1));
        assert_eq!(r.blocks(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(r.block_cut_edges(), &[(0, 1), (1, 1)]);
        assert!(!is_biconnected(&g, &g.vertex_set()));
    }

    #[test]
    fn p8_cycle_with_pendant() {
        let g = p8();
        // labels {1,2,4,3,5}: cycle 1-2-4-3 and pendant 5 on 4
        let s = NodeSet::from_vertices(8, [0, 1, 3, 2, 4]);
        let r = articulation_report(&g, &s);
        assert_eq!(r.split_count(3), Some(2));
        for x in [0, 1, 2, 4] {
            assert_eq!(r.split_count(x), Some(1));
        }
        assert_eq!(r.split_count(5), None);
        assert_eq!(r.max_split(), Some((2, 3)));
        assert_eq!(r.count_without(3), Some(2));
    }

    #[test]
    fn singleton_component_splits_to_zero() {
        let g = p8();
        let s = NodeSet::from_vertices(8, [0, 5]);
        let r = articulation_report(&g, &s);
        assert_eq!(r.split_count(0), Some(0));
        assert_eq!(r.components().count(), 2);
        assert_eq!(r.count_without(0), Some(1));
    }

    #[test]
    fn biconnectivity_conventions() {
        let g = p8();
        assert!(is_biconnected(&g, &g.vertex_set()));
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        assert!(!is_biconnected(&edge, &edge.vertex_set()));
        assert!(!is_biconnected(&star(3), &star(3).vertex_set()));
        assert!(!is_biconnected(&g, &NodeSet::new(8)));
    }

    #[test]
    fn count_without_matches_deletion() {
        let g = p8();
        let s = NodeSet::from_vertices(8, [0, 1, 2, 3, 4, 6, 7]);
        let r = articulation_report(&g, &s);
        for x in s.iter() {
            assert_eq!(
                r.count_without(x),
                Some(induced_components(&g, &s.without(x)).count())
            );
        }
    }
}
