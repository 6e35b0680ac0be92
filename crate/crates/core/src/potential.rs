//! Node colors, the potential f(C) = p̂(C) + q(C) + m(C) and its gains.
//!
//! For a node set C of a graph G:
//! * p(C) counts components of G[C];
//! * p̂(C) is the largest p(C ∖ {x}) over x ∈ C (0 for the empty set), and a
//!   smallest vertex attaining it is the critical node;
//! * q(C) counts components of the spanning subgraph keeping edges with an
//!   endpoint in C;
//! * m(C) counts vertices outside C with fewer than `m_fold` neighbors in C.
//!
//! The gain of a candidate y is f(C) − f(C ∪ {y}).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    articulation_report, closed_components, induced_components, ArticulationReport, Graph, NodeSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    /// In C.
    Black,
    /// Outside C with at least `m_fold` neighbors in C.
    Gray,
    /// Outside C with between 1 and `m_fold - 1` neighbors in C.
    Red,
    /// Outside C with no neighbor in C.
    White,
}

pub fn color_of(g: &Graph, c: &NodeSet, v: usize, m_fold: usize) -> Color {
    if c.contains(v) {
        return Color::Black;
    }
    color_for_cover(g.neighbors_in(v, c), m_fold)
}

fn color_for_cover(cover: usize, m_fold: usize) -> Color {
    match cover {
        0 => Color::White,
        k if k >= m_fold => Color::Gray,
        _ => Color::Red,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PotentialSnapshot {
    pub p: usize,
    pub p_hat: usize,
    pub q: usize,
    pub m: usize,
    pub f: usize,
    pub critical_node: Option<usize>,
}

impl PotentialSnapshot {
    fn new(p: usize, p_hat: usize, q: usize, m: usize, critical_node: Option<usize>) -> Self {
        Self {
            p,
            p_hat,
            q,
            m,
            f: p_hat + q + m,
            critical_node,
        }
    }
}

/// p̂ and the critical node from one articulation pass: p(C) − 1 + max split.
fn p_hat_from(report: &ArticulationReport) -> (usize, Option<usize>) {
    match report.max_split() {
        Some((split, x)) => (report.components().count() - 1 + split, Some(x)),
        None => (0, None),
    }
}

fn deficient_count(g: &Graph, c: &NodeSet, m_fold: usize) -> usize {
    (0..g.n())
        .filter(|&v| !c.contains(v) && g.neighbors_in(v, c) < m_fold)
        .count()
}

pub fn snapshot(g: &Graph, c: &NodeSet, m_fold: usize) -> PotentialSnapshot {
    let report = articulation_report(g, c);
    let (p_hat, critical) = p_hat_from(&report);
    PotentialSnapshot::new(
        report.components().count(),
        p_hat,
        closed_components(g, c).count(),
        deficient_count(g, c, m_fold),
        critical,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GainBreakdown {
    pub candidate: usize,
    pub candidate_color: Color,
    pub d_phat: i64,
    pub d_q: i64,
    pub d_m: i64,
    pub d_f: i64,
}

impl GainBreakdown {
    fn new(candidate: usize, candidate_color: Color, d_phat: i64, d_q: i64, d_m: i64) -> Self {
        Self {
            candidate,
            candidate_color,
            d_phat,
            d_q,
            d_m,
            d_f: d_phat + d_q + d_m,
        }
    }

    fn zero(candidate: usize) -> Self {
        Self::new(candidate, Color::Black, 0, 0, 0)
    }
}

fn diff(before: usize, after: usize) -> i64 {
    before as i64 - after as i64
}

/// f(C) − f(C ∪ {y}) split into its three parts. Zero when y ∈ C.
pub fn gain(g: &Graph, c: &NodeSet, y: usize, m_fold: usize) -> GainBreakdown {
    if c.contains(y) {
        return GainBreakdown::zero(y);
    }
    let before = snapshot(g, c, m_fold);
    let after = snapshot(g, &c.with(y), m_fold);
    GainBreakdown::new(
        y,
        color_of(g, c, y, m_fold),
        diff(before.p_hat, after.p_hat),
        diff(before.q, after.q),
        diff(before.m, after.m),
    )
}

/// Gains of every candidate against a fixed C, sharing one articulation pass,
/// one spanning-component labelling and one coverage count across candidates.
/// Only the component that `y` would join is re-examined per candidate.
pub struct GainEvaluator<'g> {
    g: &'g Graph,
    c: NodeSet,
    m_fold: usize,
    cover: Vec<usize>,
    closed_label: Vec<usize>,
    report: ArticulationReport,
    /// (largest split inside the component, component id), descending.
    component_peaks: Vec<(usize, usize)>,
    snapshot: PotentialSnapshot,
}

impl<'g> GainEvaluator<'g> {
    pub fn new(g: &'g Graph, c: &NodeSet, m_fold: usize) -> Self {
        let report = articulation_report(g, c);
        let (p_hat, critical) = p_hat_from(&report);
        let closed = closed_components(g, c);
        let closed_label = (0..g.n())
            .map(|v| closed.component_of(v).expect("spanning partition covers V"))
            .collect();
        let cover: Vec<usize> = (0..g.n()).map(|v| g.neighbors_in(v, c)).collect();
        let m = (0..g.n())
            .filter(|&v| !c.contains(v) && cover[v] < m_fold)
            .count();
        let mut component_peaks: Vec<(usize, usize)> = report
            .components()
            .components()
            .enumerate()
            .map(|(id, members)| {
                let peak = members
                    .iter()
                    .map(|&x| report.split_count(x).unwrap_or(0))
                    .max()
                    .unwrap_or(0);
                (peak, id)
            })
            .collect();
        component_peaks.sort_by(|a, b| b.cmp(a));
        let snapshot = PotentialSnapshot::new(
            report.components().count(),
            p_hat,
            closed.count(),
            m,
            critical,
        );
        Self {
            g,
            c: c.clone(),
            m_fold,
            cover,
            closed_label,
            report,
            component_peaks,
            snapshot,
        }
    }

    pub fn snapshot(&self) -> &PotentialSnapshot {
        &self.snapshot
    }

    pub fn evaluate(&self, y: usize) -> GainBreakdown {
        if self.c.contains(y) {
            return GainBreakdown::zero(y);
        }
        let g = self.g;
        let nbrs = g.neighbors(y);

        let mut d_m = (self.cover[y] < self.m_fold) as i64;
        d_m += nbrs
            .iter()
            .filter(|&&v| !self.c.contains(v) && self.cover[v] + 1 == self.m_fold)
            .count() as i64;

        let mut labels: Vec<usize> = nbrs.iter().map(|&v| self.closed_label[v]).collect();
        labels.push(self.closed_label[y]);
        labels.sort_unstable();
        labels.dedup();
        let d_q = labels.len() as i64 - 1;

        let d_phat = self.phat_drop(y);
        GainBreakdown::new(
            y,
            color_for_cover(self.cover[y], self.m_fold),
            d_phat,
            d_q,
            d_m,
        )
    }

    fn phat_drop(&self, y: usize) -> i64 {
        if self.c.is_empty() {
            return 0;
        }
        let parts = self.report.components();
        let mut joined: Vec<usize> = self
            .g
            .neighbors(y)
            .iter()
            .filter_map(|&v| parts.component_of(v))
            .collect();
        joined.sort_unstable();
        joined.dedup();
        if joined.is_empty() {
            // y becomes an isolated component: p grows by one, no split changes.
            return -1;
        }
        let p_after = parts.count() - joined.len() + 1;
        let untouched_peak = self
            .component_peaks
            .iter()
            .find(|(_, id)| joined.binary_search(id).is_err())
            .map_or(0, |&(peak, _)| peak);
        let mut merged = NodeSet::new(self.g.n());
        merged.insert(y);
        for &id in &joined {
            for &v in parts.members(id) {
                merged.insert(v);
            }
        }
        let merged_peak = articulation_report(self.g, &merged)
            .max_split()
            .map_or(0, |(s, _)| s);
        let p_hat_after = p_after - 1 + untouched_peak.max(merged_peak);
        diff(self.snapshot.p_hat, p_hat_after)
    }

    /// Best candidate outside C: largest d_f, ties to the smallest id.
    pub fn best(&self) -> Option<GainBreakdown> {
        (0..self.g.n())
            .filter(|&y| !self.c.contains(y))
            .map(|y| self.evaluate(y))
            .fold(None, |best: Option<GainBreakdown>, cand| match best {
                Some(b) if b.d_f >= cand.d_f => Some(b),
                _ => Some(cand),
            })
    }
}

/// The quantities α, β, γ for a set A, candidate y and A's critical node r,
/// where A_r is the component of G[A] containing r:
/// α = p(A_r ∖ {r}); β = components of G[A ∖ A_r] adjacent to y;
/// γ = components of G[A_r ∖ {r}] adjacent to y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaBetaGamma {
    pub r: usize,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl AlphaBetaGamma {
    /// Δ_y p̂(A) = min{α, β + γ} − 1.
    pub fn delta_phat(&self) -> i64 {
        self.alpha.min(self.beta + self.gamma) as i64 - 1
    }

    /// p̂(A ∪ {y}) = max{α − γ, β} + 1.
    pub fn phat_after(&self) -> usize {
        (self.alpha - self.gamma).max(self.beta) + 1
    }
}

pub fn alpha_beta_gamma(g: &Graph, a: &NodeSet, y: usize) -> Result<AlphaBetaGamma> {
    let report = articulation_report(g, a);
    let (_, Some(r)) = p_hat_from(&report) else {
        return Err(Error::EmptySet);
    };
    let parts = report.components();
    let home = parts.member_set(parts.component_of(r).expect("critical node is in A"));

    let count_adjacent = |set: &NodeSet| {
        let comps = induced_components(g, set);
        let adjacent = comps
            .components()
            .filter(|members| members.iter().any(|&v| g.has_edge(v, y)))
            .count();
        (comps.count(), adjacent)
    };
    let (alpha, gamma) = count_adjacent(&home.without(r));
    let (_, beta) = count_adjacent(&a.difference(&home));
    Ok(AlphaBetaGamma {
        r,
        alpha,
        beta,
        gamma,
    })
}

pub fn result1_delta_phat(abg: &AlphaBetaGamma) -> i64 {
    abg.delta_phat()
}

/// Second differences μ(·) = Δ_y(·)(A ∪ B) − Δ_y(·)(A) and the quantities the
/// quantities the case bounds on μ are stated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MuDiagnostics {
    pub mu_phat: i64,
    pub mu_q: i64,
    pub mu_m: i64,
    /// Neighbors of y White w.r.t. A and Red w.r.t. A ∪ B.
    pub s_union: usize,
    /// Neighbors of y White w.r.t. A and Red w.r.t. B alone.
    pub s_b_only: usize,
    pub y_gray_for_union_not_for_a: bool,
    pub y_adjacent_to_b: bool,
    pub gain_a: i64,
    pub gain_union: i64,
}

impl MuDiagnostics {
    pub fn mu_f(&self) -> i64 {
        self.mu_phat + self.mu_q + self.mu_m
    }

    /// The case formula for μ(m) evaluated with a given |S|.
    pub fn predicted_mu_m(&self, s: usize) -> i64 {
        s as i64 - self.y_gray_for_union_not_for_a as i64
    }

    /// The case bound on μ(q) evaluated with a given |S|.
    pub fn mu_q_bound(&self, s: usize) -> i64 {
        if self.y_adjacent_to_b {
            -(s as i64)
        } else {
            1 - s as i64
        }
    }
}

pub fn mu_diagnostics(
    g: &Graph,
    a: &NodeSet,
    b: &NodeSet,
    y: usize,
    m_fold: usize,
) -> MuDiagnostics {
    let union = a.union(b);
    let on_a = gain(g, a, y, m_fold);
    let on_union = gain(g, &union, y, m_fold);
    let white_then_red = |other: &NodeSet| {
        g.neighbors(y)
            .iter()
            .filter(|&&v| {
                color_of(g, a, v, m_fold) == Color::White
                    && color_of(g, other, v, m_fold) == Color::Red
            })
            .count()
    };
    MuDiagnostics {
        mu_phat: on_union.d_phat - on_a.d_phat,
        mu_q: on_union.d_q - on_a.d_q,
        mu_m: on_union.d_m - on_a.d_m,
        s_union: white_then_red(&union),
        s_b_only: white_then_red(b),
        y_gray_for_union_not_for_a: color_of(g, &union, y, m_fold) == Color::Gray
            && color_of(g, a, y, m_fold) != Color::Gray,
        y_adjacent_to_b: g.is_adjacent_to_set(y, b),
        gain_a: on_a.d_f,
        gain_union: on_union.d_f,
    }
}
