//! Two-phase construction of a (2, m)-CDS.
//!
//! Phase 1 adds, one at a time, the outside vertex with the largest gain
//! f(C) − f(C ∪ {y}) (ties to the smallest id) until no gain is positive.
//! Phase 2 turns whatever phase 1 left into a single biconnected, m-fold
//! dominating backbone. Each phase-2 round performs the first applicable step:
//!
//! 1. domination repair: some outside vertex still has fewer than `m_fold`
//!    backbone neighbors;
//! 2. cut-vertex repair: a component with a cut vertex `x` gets an outside
//!    node touching two pieces of `K ∖ {x}`, or else the shortest path
//!    reconnecting two pieces around `x`;
//! 3. done, once a single biconnected component remains (a lone one- or
//!    two-vertex component is grown instead);
//! 4. pair merge: two outside nodes each adjacent to both of a pair of
//!    components;
//! 5. fallback: interior of a shortest path between the two closest
//!    components.
//!
//! Every round adds at least one vertex, so phase 2 ends within n rounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    articulation_report, induced_components, is_biconnected, restricted_shortest_path, Graph,
    NodeSet,
};
use crate::potential::{snapshot, GainBreakdown, GainEvaluator, PotentialSnapshot};
use crate::verify::{verify_certificate, Certificate};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    #[default]
    SmallestId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SolveConfig {
    pub m_fold: usize,
    pub tie_break: TieBreak,
    pub record_trace: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            m_fold: 2,
            tie_break: TieBreak::SmallestId,
            record_trace: true,
        }
    }
}

impl SolveConfig {
    pub fn with_m_fold(m_fold: usize) -> Self {
        Self {
            m_fold,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Greedy,
    Dominate,
    Repair,
    Grow,
    Merge,
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub phase: u8,
    pub kind: StepKind,
    pub chosen: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gain: Option<GainBreakdown>,
    pub f_after: usize,
    /// f_after − 2.
    pub a_i: i64,
}

/// What phase 1 left behind, checked against the properties its stopping
/// rule is supposed to guarantee.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phase1Report {
    pub size: usize,
    pub snapshot: PotentialSnapshot,
    /// Component count of G[C].
    pub components: usize,
    /// Largest gain over outside candidates when the loop stopped (≤ 0).
    pub final_max_gain: Option<i64>,
    pub m_zero: bool,
    /// Components failing the biconnectivity test (fewer than three vertices
    /// or a cut vertex).
    pub non_biconnected_components: usize,
    /// Components containing a cut vertex.
    pub components_with_cut_vertex: usize,
}

impl Phase1Report {
    pub fn postconditions_hold(&self) -> bool {
        self.m_zero && self.non_biconnected_components == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phase1Outcome {
    pub c: NodeSet,
    pub trace: Vec<TraceStep>,
    pub report: Phase1Report,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Phase2Stats {
    pub added: usize,
    pub merges: usize,
    pub repairs: usize,
    /// Repairs that needed a multi-node path instead of one bridging node.
    pub repair_paths: usize,
    pub domination_repairs: usize,
    pub grows: usize,
    pub fallback_events: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phase2Outcome {
    pub c: NodeSet,
    pub trace: Vec<TraceStep>,
    pub stats: Phase2Stats,
    pub fallback_used: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub c: NodeSet,
    pub trace: Vec<TraceStep>,
    pub phase1: Phase1Report,
    /// Component count of G[C] when phase 1 stopped.
    pub t_phase1: usize,
    pub phase2: Phase2Stats,
    pub phase2_added: usize,
    pub fallback_used: bool,
    pub certificate: Certificate,
}

fn check_input(g: &Graph, cfg: &SolveConfig) -> Result<()> {
    if cfg.m_fold < 2 {
        return Err(Error::InvalidMFold(cfg.m_fold));
    }
    if g.n() < 3 {
        return Err(Error::TooFewVertices { n: g.n() });
    }
    let all = g.vertex_set();
    if !is_biconnected(g, &all) {
        let report = articulation_report(g, &all);
        let cut_vertex = if report.components().count() == 1 {
            report.cut_vertices().next()
        } else {
            None
        };
        return Err(Error::NotBiconnected { cut_vertex });
    }
    Ok(())
}

fn step(
    phase: u8,
    kind: StepKind,
    chosen: Vec<usize>,
    gain: Option<GainBreakdown>,
    f: usize,
) -> TraceStep {
    TraceStep {
        phase,
        kind,
        chosen,
        gain,
        f_after: f,
        a_i: f as i64 - 2,
    }
}

/// Greedy maximisation of the potential drop until no candidate has a
/// positive gain.
pub fn greedy_phase1(g: &Graph, cfg: &SolveConfig) -> Result<Phase1Outcome> {
    check_input(g, cfg)?;
    let mut c = NodeSet::new(g.n());
    let mut trace = Vec::new();
    let mut f = snapshot(g, &c, cfg.m_fold).f;
    let final_max_gain = loop {
        let eval = GainEvaluator::new(g, &c, cfg.m_fold);
        debug_assert_eq!(eval.snapshot().f, f);
        match eval.best() {
            Some(best) if best.d_f > 0 => {
                c.insert(best.candidate);
                f -= best.d_f as usize;
                if cfg.record_trace {
                    trace.push(step(
                        1,
                        StepKind::Greedy,
                        vec![best.candidate],
                        Some(best),
                        f,
                    ));
                }
            }
            other => break other.map(|b| b.d_f),
        }
    };

    let snap = snapshot(g, &c, cfg.m_fold);
    let report = articulation_report(g, &c);
    let parts = report.components();
    let mut non_biconnected = 0;
    let mut with_cut = 0;
    for members in parts.components() {
        let has_cut = members.iter().any(|&x| report.is_cut(x));
        with_cut += has_cut as usize;
        non_biconnected += (has_cut || members.len() < 3) as usize;
    }
    Ok(Phase1Outcome {
        report: Phase1Report {
            size: c.len(),
            snapshot: snap,
            components: parts.count(),
            final_max_gain,
            m_zero: snap.m == 0,
            non_biconnected_components: non_biconnected,
            components_with_cut_vertex: with_cut,
        },
        c,
        trace,
    })
}

struct Merger<'g> {
    g: &'g Graph,
    m_fold: usize,
    record_trace: bool,
    c: NodeSet,
    trace: Vec<TraceStep>,
    stats: Phase2Stats,
}

impl Merger<'_> {
    fn add(&mut self, kind: StepKind, nodes: Vec<usize>) {
        let mut fresh = Vec::new();
        for v in nodes {
            if self.c.insert(v) {
                fresh.push(v);
            }
        }
        assert!(!fresh.is_empty(), "phase-2 step added nothing");
        self.stats.added += fresh.len();
        match kind {
            StepKind::Dominate => self.stats.domination_repairs += 1,
            StepKind::Repair => self.stats.repairs += 1,
            StepKind::Grow => self.stats.grows += 1,
            StepKind::Merge => self.stats.merges += 1,
            StepKind::Fallback => self.stats.fallback_events += 1,
            StepKind::Greedy => unreachable!(),
        }
        if self.record_trace {
            let f = snapshot(self.g, &self.c, self.m_fold).f;
            self.trace.push(step(2, kind, fresh, None, f));
        }
    }

    fn outside(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.g.n()).filter(|&v| !self.c.contains(v))
    }

    /// Outside node fixing the most under-covered vertices (itself included).
    fn domination_candidate(&self) -> Option<usize> {
        let deficient =
            |v: usize| !self.c.contains(v) && self.g.neighbors_in(v, &self.c) < self.m_fold;
        if !self.outside().any(deficient) {
            return None;
        }
        self.outside()
            .map(|y| {
                let fixed = deficient(y) as usize
                    + self
                        .g
                        .neighbors(y)
                        .iter()
                        .filter(|&&v| {
                            deficient(v) && self.g.neighbors_in(v, &self.c) + 1 == self.m_fold
                        })
                        .count();
                (fixed, y)
            })
            .filter(|&(fixed, _)| fixed > 0)
            .min_by_key(|&(fixed, y)| (std::cmp::Reverse(fixed), y))
            .map(|(_, y)| y)
    }

    /// Nodes reconnecting two pieces around the first cut vertex found.
    fn repair_candidate(&self) -> Option<Vec<usize>> {
        let g = self.g;
        let report = articulation_report(g, &self.c);
        let x = report.cut_vertices().next()?;
        let home = report.components().member_set(
            report
                .components()
                .component_of(x)
                .expect("cut vertex is in C"),
        );
        let rest = home.without(x);
        let pieces = induced_components(g, &rest);

        let touched = |y: usize| {
            let mut ids: Vec<usize> = g
                .neighbors(y)
                .iter()
                .filter_map(|&v| pieces.component_of(v))
                .collect();
            ids.sort_unstable();
            ids.dedup();
            ids.len()
        };
        let bridge = self
            .outside()
            .map(|y| (touched(y), y))
            .filter(|&(t, _)| t >= 2)
            .min_by_key(|&(t, y)| (std::cmp::Reverse(t), y));
        if let Some((_, y)) = bridge {
            return Some(vec![y]);
        }

        let first = pieces.member_set(0);
        let others = rest.difference(&first);
        let allowed = home.complement();
        let path = restricted_shortest_path(g, &first, &others, &allowed)?;
        Some(path[1..path.len() - 1].to_vec())
    }

    /// Grows a lone component with fewer than three vertices.
    fn grow_candidate(&self, members: &[usize]) -> Option<Vec<usize>> {
        let g = self.g;
        match *members {
            [a, b] => {
                let outside_of = |v: usize| {
                    NodeSet::from_vertices(
                        g.n(),
                        g.neighbors(v)
                            .iter()
                            .copied()
                            .filter(|&w| !self.c.contains(w)),
                    )
                };
                let (na, nb) = (outside_of(a), outside_of(b));
                if let Some(common) = na.iter().find(|&w| nb.contains(w)) {
                    return Some(vec![common]);
                }
                restricted_shortest_path(g, &na, &nb, &self.c.complement())
            }
            [a] => g.neighbors(a).first().map(|&w| vec![w]),
            _ => None,
        }
    }

    /// Two outside nodes adjacent to both components of some pair, preferring
    /// pairs whose attachments are distinct on each side.
    fn merge_candidate(&self, comps: &[NodeSet]) -> Option<Vec<usize>> {
        let g = self.g;
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                let common: Vec<usize> = self
                    .outside()
                    .filter(|&y| {
                        g.is_adjacent_to_set(y, &comps[i]) && g.is_adjacent_to_set(y, &comps[j])
                    })
                    .collect();
                if common.len() < 2 {
                    continue;
                }
                let spread = |u: usize, w: usize, k: &NodeSet| {
                    let nu: Vec<usize> = g
                        .neighbors(u)
                        .iter()
                        .copied()
                        .filter(|&v| k.contains(v))
                        .collect();
                    let nw: Vec<usize> = g
                        .neighbors(w)
                        .iter()
                        .copied()
                        .filter(|&v| k.contains(v))
                        .collect();
                    nu.iter().any(|a| nw.iter().any(|b| a != b))
                };
                let mut first_pair = None;
                for (ui, &u) in common.iter().enumerate() {
                    for &w in &common[ui + 1..] {
                        first_pair.get_or_insert((u, w));
                        if spread(u, w, &comps[i]) && spread(u, w, &comps[j]) {
                            return Some(vec![u, w]);
                        }
                    }
                }
                return first_pair.map(|(u, w)| vec![u, w]);
            }
        }
        None
    }

    /// Interior of the shortest outside path between two distinct components.
    fn fallback_candidate(&self, comps: &[NodeSet]) -> Option<Vec<usize>> {
        let allowed = self.c.complement();
        comps
            .iter()
            .filter_map(|k| {
                let others = self.c.difference(k);
                restricted_shortest_path(self.g, k, &others, &allowed)
            })
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .map(|path| path[1..path.len() - 1].to_vec())
    }

    fn run(&mut self) -> Result<()> {
        for _ in 0..=self.g.n() {
            if let Some(y) = self.domination_candidate() {
                self.add(StepKind::Dominate, vec![y]);
                continue;
            }
            if let Some(nodes) = self.repair_candidate() {
                if nodes.len() > 1 {
                    self.stats.repair_paths += 1;
                }
                self.add(StepKind::Repair, nodes);
                continue;
            }
            let parts = induced_components(self.g, &self.c);
            if parts.count() == 1 {
                let members = parts.members(0);
                if members.len() >= 3 {
                    return Ok(());
                }
                let nodes = self.grow_candidate(members).ok_or_else(|| {
                    Error::Infeasible(format!("cannot grow component {members:?}"))
                })?;
                self.add(StepKind::Grow, nodes);
                continue;
            }
            let comps: Vec<NodeSet> = (0..parts.count()).map(|i| parts.member_set(i)).collect();
            if let Some(pair) = self.merge_candidate(&comps) {
                self.add(StepKind::Merge, pair);
                continue;
            }
            let path = self.fallback_candidate(&comps).ok_or_else(|| {
                Error::Infeasible(format!("no path between {} components", comps.len()))
            })?;
            self.add(StepKind::Fallback, path);
        }
        Err(Error::Infeasible(format!(
            "no single biconnected backbone after {} rounds, C = {:?}",
            self.g.n() + 1,
            self.c
        )))
    }
}

/// Merges the phase-1 components into one biconnected, m-fold dominating set.
pub fn phase2_merge(g: &Graph, c: &NodeSet, cfg: &SolveConfig) -> Result<Phase2Outcome> {
    check_input(g, cfg)?;
    let mut merger = Merger {
        g,
        m_fold: cfg.m_fold,
        record_trace: cfg.record_trace,
        c: c.clone(),
        trace: Vec::new(),
        stats: Phase2Stats::default(),
    };
    merger.run()?;
    Ok(Phase2Outcome {
        fallback_used: merger.stats.fallback_events > 0,
        c: merger.c,
        trace: merger.trace,
        stats: merger.stats,
    })
}

pub fn solve(g: &Graph, cfg: &SolveConfig) -> Result<Solution> {
    let phase1 = greedy_phase1(g, cfg)?;
    let phase2 = phase2_merge(g, &phase1.c, cfg)?;
    let mut certificate = verify_certificate(g, &phase2.c, cfg.m_fold);
    certificate.fallback_used = phase2.fallback_used;
    let mut trace = phase1.trace;
    trace.extend(phase2.trace);
    Ok(Solution {
        c: phase2.c,
        trace,
        t_phase1: phase1.report.components,
        phase1: phase1.report,
        phase2_added: phase2.stats.added,
        phase2: phase2.stats,
        fallback_used: phase2.fallback_used,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn triangle_takes_everything() {
        let g = triangle();
        let sol = solve(&g, &SolveConfig::default()).unwrap();
        assert_eq!(sol.c.len(), 3);
        assert!(sol.certificate.valid);
        assert_eq!(snapshot(&g, &sol.c, 2).f, 2);
    }

    #[test]
    fn p8_first_pick_is_label_four() {
        let g = p8();
        let out = greedy_phase1(&g, &SolveConfig::default()).unwrap();
        let first = &out.trace[0];
        assert_eq!(first.chosen, vec![3]);
        assert_eq!(first.gain.unwrap().d_f, 5);
        assert_eq!(first.f_after, 11);
        let sol = solve(&g, &SolveConfig::default()).unwrap();
        assert!(sol.certificate.valid);
        assert!(sol.c.len() <= 8);
    }

    #[test]
    fn cycle_phase1_reaches_full_domination() {
        let g = cycle(6);
        let out = greedy_phase1(&g, &SolveConfig::default()).unwrap();
        assert!(out.report.m_zero);
        let sol = solve(&g, &SolveConfig::default()).unwrap();
        // every proper subset of a cycle induces paths
        assert_eq!(sol.c.len(), 6);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            solve(&star(3), &SolveConfig::default()).unwrap_err(),
            Error::NotBiconnected {
                cut_vertex: Some(0)
            }
        );
        assert_eq!(
            solve(&triangle(), &SolveConfig::with_m_fold(1)).unwrap_err(),
            Error::InvalidMFold(1)
        );
    }

    /// Two triangles {0,1,2} and {3,4,5}; 6 and 7 see vertex 0/1 and 3/4.
    fn two_triangles() -> Graph {
        Graph::new(
            8,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (6, 0),
                (6, 3),
                (7, 1),
                (7, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn merges_two_triangles_with_a_pair() {
        let g = two_triangles();
        assert!(is_biconnected(&g, &g.vertex_set()));
        let c = NodeSet::from_vertices(8, [0, 1, 2, 3, 4, 5]);
        // 2-5 is an edge, so start from triangles minus that link
        let g2 = Graph::new(8, g.edges().filter(|&e| e != (2, 5))).unwrap();
        let out = phase2_merge(&g2, &c, &SolveConfig::default()).unwrap();
        assert_eq!(out.stats.added, 2);
        assert_eq!(out.stats.merges, 1);
        assert!(!out.fallback_used);
        assert!(is_biconnected(&g2, &out.c));
        assert!(out.stats.added <= 2 * 2);
    }

    #[test]
    fn bridging_node_touching_third_component_is_repaired() {
        // triangles A={0,1,2}, B={3,4,5}, D={6,7,8}; 9 and 10 see A and B,
        // 9 also sees D through a single edge, 11 links D back to B.
        let g = Graph::new(
            12,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (6, 7),
                (7, 8),
                (6, 8),
                (9, 0),
                (9, 3),
                (10, 1),
                (10, 4),
                (9, 6),
                (11, 7),
                (11, 5),
            ],
        )
        .unwrap();
        assert!(is_biconnected(&g, &g.vertex_set()));
        let c = NodeSet::from_vertices(12, [0, 1, 2, 3, 4, 5, 6, 7, 8]);
        let out = phase2_merge(&g, &c, &SolveConfig::default()).unwrap();
        assert_eq!(out.stats.merges, 1);
        assert_eq!(out.stats.repairs, 1);
        assert_eq!(out.c.len(), 12);
        assert!(verify_certificate(&g, &out.c, 2).valid);
    }

    #[test]
    fn single_biconnected_component_adds_nothing() {
        let g = p8();
        let c = NodeSet::from_vertices(8, 0..7);
        let out = phase2_merge(&g, &c, &SolveConfig::default()).unwrap();
        assert_eq!(out.stats.added, 0);
        assert!(out.trace.is_empty());
    }

    #[test]
    fn trace_is_deterministic() {
        let g = p8();
        let a = solve(&g, &SolveConfig::default()).unwrap();
        let b = solve(&g, &SolveConfig::default()).unwrap();
        assert_eq!(a, b);
    }
}
