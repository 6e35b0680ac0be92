//! Brute-force ground truth. Nothing here calls into the component,
//! articulation or potential code; only the `Graph` container is shared.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::potential::PotentialSnapshot;

/// Largest graph the exhaustive search accepts.
pub const EXACT_CAP: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct ExactResult {
    pub optimum: Vec<usize>,
    pub theta: usize,
    pub subsets_examined: u64,
    #[serde(serialize_with = "as_millis")]
    pub time: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

/// Component count of `G[s]` by flood fill.
fn naive_components(g: &Graph, s: &NodeSet) -> usize {
    let mut seen = NodeSet::new(g.n());
    let mut count = 0;
    for root in s.iter() {
        if !seen.insert(root) {
            continue;
        }
        count += 1;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if s.contains(v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
    }
    count
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// p̂ by explicit deletion, q by materialising the spanning subgraph, m by
/// counting neighbors.
pub fn naive_snapshot(g: &Graph, c: &NodeSet, m_fold: usize) -> PotentialSnapshot {
    let n = g.n();
    let p = naive_components(g, c);

    let mut p_hat = 0;
    let mut critical = None;
    for x in c.iter() {
        let without = naive_components(g, &c.without(x));
        if critical.is_none() || without > p_hat {
            p_hat = without;
            critical = Some(x);
        }
    }

    let spanning: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| c.contains(u) || c.contains(v))
        .collect();
    let mut parent: Vec<usize> = (0..n).collect();
    for (u, v) in spanning {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let q = (0..n).filter(|&v| find(&mut parent, v) == v).count();

    let m = (0..n)
        .filter(|&v| !c.contains(v))
        .filter(|&v| g.neighbors(v).iter().filter(|&&w| c.contains(w)).count() < m_fold)
        .count();

    PotentialSnapshot {
        p,
        p_hat,
        q,
        m,
        f: p_hat + q + m,
        critical_node: critical,
    }
}

/// Naive f(C) − f(C ∪ {y}).
pub fn naive_gain(g: &Graph, c: &NodeSet, y: usize, m_fold: usize) -> i64 {
    naive_snapshot(g, c, m_fold).f as i64 - naive_snapshot(g, &c.with(y), m_fold).f as i64
}

/// `G[s]` has at least three vertices, is connected, and stays connected
/// after deleting any single vertex.
pub fn naive_biconnected(g: &Graph, s: &NodeSet) -> bool {
    s.len() >= 3
        && naive_components(g, s) == 1
        && s.iter().all(|x| naive_components(g, &s.without(x)) == 1)
}

/// Bitmask form of the (2,m)-CDS test used by the exhaustive search.
struct MaskGraph {
    adj: Vec<u32>,
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
            .collect();
        Self { adj }
    }

    fn connected(&self, set: u32) -> bool {
        if set == 0 {
            return false;
        }
        let mut reached = 1u32 << set.trailing_zeros();
        loop {
            let mut next = reached;
            let mut rest = reached;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.adj[v] & set;
            }
            if next == reached {
                return reached == set;
            }
            reached = next;
        }
    }

    fn is_cds(&self, set: u32, n: usize, m_fold: usize) -> bool {
        let dominated = (0..n)
            .filter(|&v| set >> v & 1 == 0)
            .all(|v| (self.adj[v] & set).count_ones() as usize >= m_fold);
        if !dominated || set.count_ones() < 3 || !self.connected(set) {
            return false;
        }
        let mut rest = set;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            if !self.connected(set & !(1 << x)) {
                return false;
            }
        }
        true
    }
}

/// Minimum (2,m)-CDS by enumerating subsets in ascending size, lexicographic
/// within a size; the first hit is the lexicographically smallest optimum.
/// Vertices of degree below `m_fold` are forced into every candidate.
pub fn exact_min_cds(g: &Graph, m_fold: usize, max_n: usize) -> Result<ExactResult> {
    let n = g.n();
    let cap = max_n.min(EXACT_CAP);
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if m_fold < 2 {
        return Err(Error::InvalidMFold(m_fold));
    }
    let start = Instant::now();
    let masks = MaskGraph::new(g);
    let forced: u32 = (0..n)
        .filter(|&v| g.degree(v) < m_fold)
        .fold(0, |acc, v| acc | 1 << v);
    let mut examined = 0u64;

    for k in 3.max(forced.count_ones() as usize)..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let set = idx.iter().fold(0u32, |acc, &v| acc | 1 << v);
            if set & forced == forced {
                examined += 1;
                if masks.is_cds(set, n, m_fold) {
                    return Ok(ExactResult {
                        optimum: idx,
                        theta: k,
                        subsets_examined: examined,
                        time: start.elapsed(),
                    });
                }
            }
            // next k-combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Err(Error::NotBiconnected { cut_vertex: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    /// Δ_y f(A)
    pub gain_a: i64,
    /// Δ_y f(A ∪ B)
    pub gain_union: i64,
    pub holds: bool,
}

/// Evaluates Δ_y f(A ∪ B) ≤ Δ_y f(A) + 1 with naive snapshots.
pub fn check_lemma_inequality(
    g: &Graph,
    a: &NodeSet,
    b_path: &[usize],
    y: usize,
    m_fold: usize,
) -> LemmaCheck {
    let union = NodeSet::from_vertices(g.n(), a.iter().chain(b_path.iter().copied()));
    let gain_a = naive_gain(g, a, y, m_fold);
    let gain_union = naive_gain(g, &union, y, m_fold);
    LemmaCheck {
        gain_a,
        gain_union,
        holds: gain_union <= gain_a + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn exact_small_cases() {
        assert_eq!(exact_min_cds(&triangle(), 2, EXACT_CAP).unwrap().theta, 3);
        assert_eq!(exact_min_cds(&cycle(5), 2, EXACT_CAP).unwrap().theta, 5);
        let p8 = exact_min_cds(&p8(), 2, EXACT_CAP).unwrap();
        assert_eq!(p8.theta, 7);
        assert_eq!(p8.optimum, vec![0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn exact_rejects_large_and_non_biconnected() {
        assert_eq!(
            exact_min_cds(&cycle(21), 2, 30).unwrap_err(),
            Error::TooLarge { n: 21, cap: 20 }
        );
        assert_eq!(
            exact_min_cds(&cycle(8), 2, 6).unwrap_err(),
            Error::TooLarge { n: 8, cap: 6 }
        );
        assert!(exact_min_cds(&star(3), 2, EXACT_CAP).is_err());
    }

    #[test]
    fn optimum_is_minimal_by_full_scan() {
        // unpruned scan over every subset of P8
        let g = p8();
        let masks = MaskGraph::new(&g);
        let best = (0u32..256)
            .filter(|&s| masks.is_cds(s, 8, 2))
            .map(u32::count_ones)
            .min();
        assert_eq!(best, Some(7));
    }

    #[test]
    fn naive_snapshot_examples() {
        let g = p8();
        let s = naive_snapshot(&g, &NodeSet::from_vertices(8, [3]), 2);
        assert_eq!((s.p_hat, s.q, s.m, s.f), (0, 4, 7, 11));
        let s = naive_snapshot(&g, &NodeSet::new(8), 2);
        assert_eq!((s.p_hat, s.q, s.m, s.f), (0, 8, 8, 16));
        let s = naive_snapshot(&g, &g.vertex_set(), 2);
        assert_eq!(s.p_hat, 1);
    }

    #[test]
    fn lemma_trivial_cases() {
        let g = p8();
        let a = NodeSet::from_vertices(8, [0, 3]);
        let empty = check_lemma_inequality(&g, &a, &[], 5, 2);
        assert!(empty.holds);
        assert_eq!(empty.gain_a, empty.gain_union);
        let inside = check_lemma_inequality(&g, &a, &[4, 5], 3, 2);
        assert!(inside.holds);
        assert_eq!((inside.gain_a, inside.gain_union), (0, 0));
    }

    #[test]
    fn naive_biconnected_conventions() {
        assert!(naive_biconnected(&triangle(), &triangle().vertex_set()));
        assert!(!naive_biconnected(&path(3), &path(3).vertex_set()));
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        assert!(!naive_biconnected(&edge, &edge.vertex_set()));
    }
}
