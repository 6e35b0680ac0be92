//! Certificates for candidate backbones and the approximation-ratio report.

use serde::Serialize;

use crate::graph::{is_biconnected, Graph, NodeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub is_biconnected_backbone: bool,
    pub domination_ok: bool,
    /// Fewest backbone neighbors of any vertex outside C; `None` when C = V.
    pub min_outside_coverage: Option<usize>,
    pub size: usize,
    pub m_fold: usize,
    pub valid: bool,
    pub fallback_used: bool,
}

pub fn verify_certificate(g: &Graph, c: &NodeSet, m_fold: usize) -> Certificate {
    let is_biconnected_backbone = is_biconnected(g, c);
    let min_outside_coverage = (0..g.n())
        .filter(|&v| !c.contains(v))
        .map(|v| g.neighbors_in(v, c))
        .min();
    let domination_ok = min_outside_coverage.is_none_or(|k| k >= m_fold);
    Certificate {
        is_biconnected_backbone,
        domination_ok,
        min_outside_coverage,
        size: c.len(),
        m_fold,
        valid: is_biconnected_backbone && domination_ok,
        fallback_used: false,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub n: usize,
    pub max_degree: usize,
    pub m_fold: usize,
    pub greedy_size: usize,
    pub theta: Option<usize>,
    pub ratio: Option<f64>,
    /// f(∅) − 2 = 2n − 2.
    pub a0: usize,
    /// 3 + ln(Δ + m).
    pub bound_asymptotic: f64,
    /// 3 + ln(Δ + m − 1): the same bound with the first-step gain measured as
    /// the potential actually evaluates it (Δ + 1 for m = 2).
    pub bound_asymptotic_measured: f64,
    /// (θ ln(a0/θ) + 3θ + 4) / θ, unclamped.
    pub bound_full: Option<f64>,
    /// θ (3 + max(0, ln(a0/θ))) + 4: the size budget checked on solved instances.
    pub size_budget: Option<f64>,
    pub within_asymptotic: Option<bool>,
    pub within_budget: Option<bool>,
    /// 4 + ln Δ + 2 ln(2 + ln Δ): the block-merging route, for comparison only.
    pub block_merge_ratio: f64,
    /// 2 + ln(Δ + m − 2): the single-phase (1,m) greedy, for comparison only.
    pub single_phase_ratio: f64,
}

pub fn ratio_report(
    n: usize,
    max_degree: usize,
    greedy_size: usize,
    theta: Option<usize>,
    m_fold: usize,
) -> RatioReport {
    let delta = max_degree as f64;
    let m = m_fold as f64;
    let a0 = (2 * n).saturating_sub(2);
    let bound_asymptotic = 3.0 + (delta + m).ln();
    let (ratio, bound_full, size_budget) = match theta {
        Some(t) if t > 0 => {
            let t_f = t as f64;
            let log = (a0 as f64 / t_f).ln();
            (
                Some(greedy_size as f64 / t_f),
                Some((t_f * log + 3.0 * t_f + 4.0) / t_f),
                Some(t_f * (3.0 + log.max(0.0)) + 4.0),
            )
        }
        _ => (None, None, None),
    };
    RatioReport {
        n,
        max_degree,
        m_fold,
        greedy_size,
        theta,
        ratio,
        a0,
        bound_asymptotic,
        bound_asymptotic_measured: 3.0 + (delta + m - 1.0).ln(),
        bound_full,
        size_budget,
        within_asymptotic: ratio.map(|r| r <= bound_asymptotic),
        within_budget: size_budget.map(|b| greedy_size as f64 <= b),
        block_merge_ratio: 4.0 + delta.ln() + 2.0 * (2.0 + delta.ln()).ln(),
        single_phase_ratio: 2.0 + (delta + m - 2.0).ln(),
    }
}
