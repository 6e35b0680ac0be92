//! JSON report (schema 1) and DOT rendering. Everything user-facing is
//! expressed in the input file's labels.

use std::fmt::Write as _;

use serde::Serialize;

use crate::io::LabeledGraph;
use crate::oracle::ExactResult;
use crate::potential::{color_of, Color, GainBreakdown};
use crate::solver::{Phase2Stats, Solution, SolveConfig, StepKind, TraceStep};
use crate::verify::{Certificate, RatioReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct JsonReport {
    pub schema: u32,
    pub input: InputSummary,
    pub config: ConfigSummary,
    pub solution: SolutionSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
    pub certificate: Certificate,
    pub ratio_report: RatioReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactSummary>,
    pub timings: Timings,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputSummary {
    pub n: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub duplicate_edges: usize,
    /// Original label of each vertex, in internal order.
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigSummary {
    pub m_fold: usize,
    pub seed: Option<u64>,
    pub tie_break: crate::solver::TieBreak,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionSummary {
    pub c: Vec<String>,
    pub size: usize,
    pub t_phase1: usize,
    pub phase1_size: usize,
    pub phase1_f: usize,
    pub phase1_m_zero: bool,
    pub phase1_non_biconnected_components: usize,
    pub phase2_added: usize,
    pub phase2: Phase2Stats,
    pub fallback_used: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GainEntry {
    pub candidate: String,
    pub color: Color,
    pub d_phat: i64,
    pub d_q: i64,
    pub d_m: i64,
    pub d_f: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub phase: u8,
    pub kind: StepKind,
    pub chosen: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gain: Option<GainEntry>,
    pub f_after: usize,
    pub a_i: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactSummary {
    pub theta: usize,
    pub optimum: Vec<String>,
    pub subsets_examined: u64,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Timings {
    pub solve_ms: f64,
    pub exact_ms: Option<f64>,
}

fn gain_entry(g: &LabeledGraph, gain: &GainBreakdown) -> GainEntry {
    GainEntry {
        candidate: g.label(gain.candidate).to_string(),
        color: gain.candidate_color,
        d_phat: gain.d_phat,
        d_q: gain.d_q,
        d_m: gain.d_m,
        d_f: gain.d_f,
    }
}

pub fn trace_entries(g: &LabeledGraph, trace: &[TraceStep]) -> Vec<TraceEntry> {
    trace
        .iter()
        .map(|s| TraceEntry {
            phase: s.phase,
            kind: s.kind,
            chosen: g.labels_of(s.chosen.iter().copied()),
            gain: s.gain.as_ref().map(|gain| gain_entry(g, gain)),
            f_after: s.f_after,
            a_i: s.a_i,
        })
        .collect()
}

pub struct ReportInput<'a> {
    pub graph: &'a LabeledGraph,
    pub duplicate_edges: usize,
    pub config: &'a SolveConfig,
    pub seed: Option<u64>,
    pub solution: &'a Solution,
    pub ratio: RatioReport,
    pub exact: Option<&'a ExactResult>,
    pub include_trace: bool,
    pub timings: Timings,
}

pub fn build_report(input: ReportInput<'_>) -> JsonReport {
    let g = input.graph;
    let sol = input.solution;
    JsonReport {
        schema: SCHEMA_VERSION,
        input: InputSummary {
            n: g.graph.n(),
            edges: g.graph.edge_count(),
            max_degree: g.graph.max_degree(),
            duplicate_edges: input.duplicate_edges,
            labels: g.labels().to_vec(),
        },
        config: ConfigSummary {
            m_fold: input.config.m_fold,
            seed: input.seed,
            tie_break: input.config.tie_break,
        },
        solution: SolutionSummary {
            c: g.labels_of(sol.c.iter()),
            size: sol.c.len(),
            t_phase1: sol.t_phase1,
            phase1_size: sol.phase1.size,
            phase1_f: sol.phase1.snapshot.f,
            phase1_m_zero: sol.phase1.m_zero,
            phase1_non_biconnected_components: sol.phase1.non_biconnected_components,
            phase2_added: sol.phase2_added,
            phase2: sol.phase2.clone(),
            fallback_used: sol.fallback_used,
        },
        trace: input.include_trace.then(|| trace_entries(g, &sol.trace)),
        certificate: sol.certificate.clone(),
        ratio_report: input.ratio,
        exact: input.exact.map(|e| ExactSummary {
            theta: e.theta,
            optimum: g.labels_of(e.optimum.iter().copied()),
            subsets_examined: e.subsets_examined,
        }),
        timings: input.timings,
    }
}

fn dot_escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT graph coloured relative to the backbone `c`: black nodes
/// filled black, gray filled gray, red outlined red, white left plain.
pub fn render_dot(g: &LabeledGraph, c: &crate::graph::NodeSet, m_fold: usize) -> String {
    let mut out = String::from("graph backbone {\n  node [shape=circle];\n");
    for v in 0..g.graph.n() {
        let style = match color_of(&g.graph, c, v, m_fold) {
            Color::Black => "style=filled, fillcolor=black, fontcolor=white",
            Color::Gray => "style=filled, fillcolor=gray",
            Color::Red => "color=red",
            Color::White => "color=black",
        };
        writeln!(out, "  \"{}\" [{style}];", dot_escape(g.label(v))).expect("String write");
    }
    for (u, v) in g.graph.edges() {
        let bold = if c.contains(u) && c.contains(v) {
            " [penwidth=2]"
        } else {
            ""
        };
        writeln!(
            out,
            "  \"{}\" -- \"{}\"{bold};",
            dot_escape(g.label(u)),
            dot_escape(g.label(v))
        )
        .expect("String write");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, NodeSet};

    #[test]
    fn dot_marks_backbone_filled() {
        let g = LabeledGraph::with_numeric_labels(
            Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 0)]).unwrap(),
        );
        let c = NodeSet::from_vertices(4, [0, 1, 2]);
        let dot = render_dot(&g, &c, 2);
        assert_eq!(dot.matches("fillcolor=black").count(), 3);
        assert!(dot.contains("\"3\" [style=filled, fillcolor=gray];"));
        assert!(dot.contains("\"0\" -- \"1\" [penwidth=2];"));
        assert!(dot.contains("\"2\" -- \"3\";"));
        let dot = render_dot(&g, &NodeSet::from_vertices(4, [0]), 2);
        assert!(dot.contains("\"1\" [color=red];"));
    }
}
