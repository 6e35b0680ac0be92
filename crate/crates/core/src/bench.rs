//! Benchmark harness: generate instances, solve them, optionally solve them
//! exactly, and compare the ratio with the asymptotic bound.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::generator::{generate, GenKind, GenSpec};
use crate::oracle::exact_min_cds;
use crate::solver::{solve, SolveConfig};
use crate::verify::ratio_report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchKind {
    Fixed(GenKind),
    Mixed,
}

impl std::str::FromStr for BenchKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "mixed" => Ok(Self::Mixed),
            other => other.parse().map(Self::Fixed),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub kind: BenchKind,
    pub seed: u64,
    pub exact_max_n: usize,
    pub m_fold: usize,
    /// Worker threads; rows are sorted afterwards so output does not depend on it.
    pub threads: usize,
    pub timings: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            count: 100,
            n_min: 10,
            n_max: 100,
            kind: BenchKind::Mixed,
            seed: 0,
            exact_max_n: 0,
            m_fold: 2,
            threads: 1,
            timings: true,
        }
    }
}

pub const CSV_HEADER: [&str; 12] = [
    "seed",
    "n",
    "Δ",
    "greedy_size",
    "theta",
    "ratio",
    "bound_asymptotic",
    "t_phase1",
    "phase2_added",
    "fallback_used",
    "ms_solve",
    "error",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub seed: u64,
    pub kind: GenKind,
    pub n: usize,
    pub delta: usize,
    pub greedy_size: usize,
    pub theta: Option<usize>,
    pub ratio: Option<f64>,
    pub bound_asymptotic: f64,
    pub t_phase1: usize,
    pub phase2_added: usize,
    pub fallback_used: bool,
    pub ms_solve: f64,
    pub certificate_valid: bool,
    pub phase1_postconditions: bool,
    pub error: Option<String>,
}

impl BenchRow {
    fn failed(seed: u64, kind: GenKind, n: usize, error: String) -> Self {
        Self {
            seed,
            kind,
            n,
            delta: 0,
            greedy_size: 0,
            theta: None,
            ratio: None,
            bound_asymptotic: f64::NAN,
            t_phase1: 0,
            phase2_added: 0,
            fallback_used: false,
            ms_solve: 0.0,
            certificate_valid: false,
            phase1_postconditions: false,
            error: Some(error),
        }
    }

    /// Invalid certificate, solver error, or ratio above the bound.
    pub fn is_violation(&self) -> bool {
        self.error.is_some()
            || !self.certificate_valid
            || self.ratio.is_some_and(|r| r > self.bound_asymptotic)
    }

    pub fn csv_record(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        vec![
            self.seed.to_string(),
            self.n.to_string(),
            self.delta.to_string(),
            self.greedy_size.to_string(),
            opt(self.theta.map(|t| t.to_string())),
            opt(self.ratio.map(|r| format!("{r:.6}"))),
            format!("{:.6}", self.bound_asymptotic),
            self.t_phase1.to_string(),
            self.phase2_added.to_string(),
            self.fallback_used.to_string(),
            format!("{:.3}", self.ms_solve),
            opt(self.error.clone()),
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BenchSummary {
    pub instances: usize,
    pub solved: usize,
    pub exact_solved: usize,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub fallback_count: usize,
    pub violations: usize,
    pub phase1_postcondition_failures: usize,
    pub budget_overruns: usize,
}

/// Per-instance parameters, drawn up front from the bench seed.
pub fn plan(cfg: &BenchConfig) -> Vec<(u64, usize, GenKind)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.count)
        .map(|_| {
            let seed = rng.random::<u64>();
            let n = rng.random_range(cfg.n_min..=cfg.n_max);
            let kind = match cfg.kind {
                BenchKind::Fixed(k) => k,
                BenchKind::Mixed if rng.random_bool(0.5) => GenKind::Hpath,
                BenchKind::Mixed => GenKind::Geometric,
            };
            (seed, n, kind)
        })
        .collect()
}

pub fn run_instance(seed: u64, n: usize, kind: GenKind, cfg: &BenchConfig) -> BenchRow {
    let spec = GenSpec {
        kind,
        n,
        extra: 0,
        radius: None,
        seed,
    };
    let g = match generate(&spec) {
        Ok(g) => g,
        Err(e) => return BenchRow::failed(seed, kind, n, format!("generate: {e}")),
    };
    let solve_cfg = SolveConfig {
        m_fold: cfg.m_fold,
        record_trace: false,
        ..SolveConfig::default()
    };
    let start = Instant::now();
    let sol = match solve(&g, &solve_cfg) {
        Ok(sol) => sol,
        Err(e) => return BenchRow::failed(seed, kind, n, format!("solve: {e}")),
    };
    let ms_solve = if cfg.timings {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    let theta = if n <= cfg.exact_max_n {
        match exact_min_cds(&g, cfg.m_fold, cfg.exact_max_n) {
            Ok(e) => Some(e.theta),
            Err(e) => return BenchRow::failed(seed, kind, n, format!("exact: {e}")),
        }
    } else {
        None
    };
    let ratio = ratio_report(n, g.max_degree(), sol.c.len(), theta, cfg.m_fold);
    BenchRow {
        seed,
        kind,
        n,
        delta: g.max_degree(),
        greedy_size: sol.c.len(),
        theta,
        ratio: ratio.ratio,
        bound_asymptotic: ratio.bound_asymptotic,
        t_phase1: sol.t_phase1,
        phase2_added: sol.phase2_added,
        fallback_used: sol.fallback_used,
        ms_solve,
        certificate_valid: sol.certificate.valid,
        phase1_postconditions: sol.phase1.postconditions_hold(),
        error: None,
    }
}

pub fn run(cfg: &BenchConfig) -> Vec<BenchRow> {
    let plan = plan(cfg);
    let threads = cfg.threads.max(1).min(plan.len().max(1));
    let mut rows: Vec<BenchRow> = if threads == 1 {
        plan.iter()
            .map(|&(seed, n, kind)| run_instance(seed, n, kind, cfg))
            .collect()
    } else {
        let chunk = plan.len().div_ceil(threads);
        std::thread::scope(|scope| {
            let handles: Vec<_> = plan
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter()
                            .map(|&(seed, n, kind)| run_instance(seed, n, kind, cfg))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("bench worker panicked"))
                .collect()
        })
    };
    rows.sort_by_key(|r| (r.seed, r.n));
    rows
}

pub fn summarize(rows: &[BenchRow]) -> BenchSummary {
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    BenchSummary {
        instances: rows.len(),
        solved: rows.iter().filter(|r| r.error.is_none()).count(),
        exact_solved: ratios.len(),
        max_ratio: ratios.iter().copied().reduce(f64::max),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        fallback_count: rows.iter().filter(|r| r.fallback_used).count(),
        violations: rows.iter().filter(|r| r.is_violation()).count(),
        phase1_postcondition_failures: rows
            .iter()
            .filter(|r| r.error.is_none() && !r.phase1_postconditions)
            .count(),
        budget_overruns: rows
            .iter()
            .filter(|r| r.error.is_none() && !r.fallback_used && r.phase2_added > 2 * r.t_phase1)
            .count(),
    }
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.write_record(row.csv_record())?;
    }
    writer.flush()?;
    Ok(())
}

/// Worker count from `CDS_FORGE_THREADS`, defaulting to 1.
pub fn threads_from_env() -> usize {
    std::env::var("CDS_FORGE_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or(1)
}
