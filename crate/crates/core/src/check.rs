//! Randomized property suites over small generated graphs.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::generator::{generate, GenKind, GenSpec};
use crate::graph::{articulation_report, Graph, NodeSet};
use crate::io::{format_edge_list, LabeledGraph};
use crate::oracle::{check_lemma_inequality, naive_gain, naive_snapshot};
use crate::potential::{alpha_beta_gamma, color_of, gain, mu_diagnostics, snapshot, Color};
use crate::solver::{greedy_phase1, SolveConfig};

/// Largest sampled graph; the naive oracles are quadratic in it.
pub const SAMPLE_MAX_N: usize = 20;
const KEPT_COUNTEREXAMPLES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Monotone,
    Lemma3,
    Result1,
    PhatOracle,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Self::Monotone,
        Self::Lemma3,
        Self::Result1,
        Self::PhatOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Monotone => "monotone",
            Self::Lemma3 => "lemma3",
            Self::Result1 => "result1",
            Self::PhatOracle => "phat-oracle",
        }
    }

    /// Whether failures make the suite fail, as opposed to being reported.
    pub fn asserted(self) -> bool {
        self != Self::Result1
    }
}

impl FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Self::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| crate::Error::InvalidSpec(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub sample: usize,
    pub graph: Vec<(usize, usize)>,
    pub n: usize,
    pub sets: Vec<(String, Vec<usize>)>,
    pub detail: String,
}

impl Counterexample {
    /// A loadable edge list with the sets and detail as comment lines.
    pub fn to_edge_list(&self) -> String {
        let g = Graph::new(self.n, self.graph.iter().copied()).expect("sampled graph is valid");
        let mut text = String::new();
        writeln!(text, "# {}", self.detail).unwrap();
        for (name, set) in &self.sets {
            writeln!(text, "# {name} = {set:?}").unwrap();
        }
        text + &format_edge_list(&LabeledGraph::with_numeric_labels(g))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    pub asserted: bool,
    pub notes: Vec<String>,
    /// The first few failures only.
    pub counterexamples: Vec<Counterexample>,
}

impl CheckOutcome {
    fn new(suite: Suite, samples: usize) -> Self {
        Self {
            suite,
            samples,
            passed: 0,
            failed: 0,
            asserted: suite.asserted(),
            notes: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, failure: impl FnOnce() -> Counterexample) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                self.counterexamples.push(failure());
            }
        }
    }

    pub fn ok(&self) -> bool {
        !self.asserted || self.failed == 0
    }

    /// Writes each kept counterexample as `<suite>-<sample>.txt`.
    pub fn dump(&self, dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
        std::fs::create_dir_all(dir)?;
        self.counterexamples
            .iter()
            .map(|cx| {
                let path = dir.join(format!("{}-{}.txt", self.suite.name(), cx.sample));
                std::fs::write(&path, cx.to_edge_list())?;
                Ok(path)
            })
            .collect()
    }
}

struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn graph(&mut self) -> Graph {
        loop {
            let n = self.rng.random_range(5..=SAMPLE_MAX_N);
            let kind = if self.rng.random_bool(0.5) {
                GenKind::Hpath
            } else {
                GenKind::Geometric
            };
            let spec = GenSpec {
                kind,
                n,
                extra: 0,
                radius: None,
                seed: self.rng.random(),
            };
            if let Ok(g) = generate(&spec) {
                return g;
            }
        }
    }

    fn subset(&mut self, n: usize, p: f64) -> NodeSet {
        NodeSet::from_vertices(n, (0..n).filter(|_| self.rng.random_bool(p)))
    }

    fn outside(&mut self, set: &NodeSet) -> Option<usize> {
        set.complement().to_vec().choose(&mut self.rng).copied()
    }

    /// A random induced path of 1..=6 vertices avoiding `avoid`, grown from a
    /// random start until the target length or a dead end.
    fn induced_path(&mut self, g: &Graph, avoid: &NodeSet) -> Option<Vec<usize>> {
        let target = self.rng.random_range(1..=6);
        let mut path = vec![self.outside(avoid)?];
        let mut on_path = NodeSet::from_vertices(g.n(), path.iter().copied());
        while path.len() < target {
            let last = *path.last().unwrap();
            let options: Vec<usize> = g
                .neighbors(last)
                .iter()
                .copied()
                .filter(|&v| !avoid.contains(v) && !on_path.contains(v))
                .filter(|&v| g.neighbors_in(v, &on_path) == 1)
                .collect();
            let Some(&next) = options.choose(&mut self.rng) else {
                break;
            };
            path.push(next);
            on_path.insert(next);
        }
        Some(path)
    }
}

fn witness(
    sample: usize,
    g: &Graph,
    sets: Vec<(&str, Vec<usize>)>,
    detail: String,
) -> Counterexample {
    Counterexample {
        sample,
        graph: g.edges().collect(),
        n: g.n(),
        sets: sets.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        detail,
    }
}

pub fn run_suite(suite: Suite, samples: usize, seed: u64, m_fold: usize) -> CheckOutcome {
    let mut sampler = Sampler {
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    match suite {
        Suite::Monotone => monotone(&mut sampler, samples, m_fold),
        Suite::Lemma3 => lemma3(&mut sampler, samples, m_fold),
        Suite::Result1 => result1(&mut sampler, samples),
        Suite::PhatOracle => phat_oracle(&mut sampler, samples, m_fold),
    }
}

/// Δ_y f(C) ≥ 0 on random (C, y), plus Δ ≥ 1 on every greedy phase-1 step of
/// each sampled graph.
fn monotone(s: &mut Sampler, samples: usize, m_fold: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new(Suite::Monotone, samples);
    let mut color_case_violations = 0;
    let mut greedy_steps = 0;
    let mut greedy_failures = 0;
    for i in 0..samples {
        let g = s.graph();
        let mut c = s.subset(g.n(), 0.5);
        if c.len() == g.n() {
            c.remove(s.rng.random_range(0..g.n()));
        }
        let y = s.outside(&c).expect("C is a proper subset");
        let fast = gain(&g, &c, y, m_fold);
        let naive = naive_gain(&g, &c, y, m_fold);
        let color = color_of(&g, &c, y, m_fold);
        let case_ok = match color {
            Color::Gray => fast.d_phat >= 0 && fast.d_q >= 0 && fast.d_m >= 0,
            Color::Red => fast.d_m >= 1 && fast.d_phat >= -1,
            Color::White => fast.d_m >= 1 && fast.d_q >= 1 && fast.d_phat >= -1,
            Color::Black => true,
        };
        color_case_violations += !case_ok as usize;

        let mut greedy_ok = true;
        let phase1 = greedy_phase1(&g, &SolveConfig::with_m_fold(m_fold))
            .expect("sampled graph is biconnected");
        let mut built = NodeSet::new(g.n());
        for step in &phase1.trace {
            let y = step.chosen[0];
            greedy_steps += 1;
            if naive_gain(&g, &built, y, m_fold) < 1 {
                greedy_failures += 1;
                greedy_ok = false;
            }
            built.insert(y);
        }

        out.record(naive == fast.d_f && naive >= 0 && greedy_ok, || {
            witness(
                i,
                &g,
                vec![("C", c.to_vec()), ("y", vec![y]), ("phase1", phase1.c.to_vec())],
                format!(
                    "y is {color:?}; gain {naive} (incremental {}: dp {} dq {} dm {}); greedy steps ok: {greedy_ok}",
                    fast.d_f, fast.d_phat, fast.d_q, fast.d_m
                ),
            )
        });
    }
    out.notes.push(format!(
        "color-case bound violations: {color_case_violations}"
    ));
    out.notes.push(format!(
        "greedy steps checked: {greedy_steps}, with gain < 1: {greedy_failures}"
    ));
    out
}

/// Δ_y f(A ∪ B) ≤ Δ_y f(A) + 1 with B an induced path, plus the μ case
/// analysis reported alongside.
fn lemma3(s: &mut Sampler, samples: usize, m_fold: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new(Suite::Lemma3, samples);
    let (mut mu_phat_adjacent, mut mu_phat_apart) = (0, 0);
    let (mut s_union_matches, mut s_b_matches) = (0, 0);
    let mut i = 0;
    while i < samples {
        let g = s.graph();
        let a = s.subset(g.n(), 0.3);
        let Some(path) = s.induced_path(&g, &a) else {
            continue;
        };
        let b = NodeSet::from_vertices(g.n(), path.iter().copied());
        let Some(y) = s.outside(&a.union(&b)) else {
            continue;
        };
        let check = check_lemma_inequality(&g, &a, &path, y, m_fold);
        let mu = mu_diagnostics(&g, &a, &b, y, m_fold);
        if mu.y_adjacent_to_b {
            mu_phat_adjacent += (mu.mu_phat > 1) as usize;
        } else {
            mu_phat_apart += (mu.mu_phat != 0) as usize;
        }
        s_union_matches += (mu.predicted_mu_m(mu.s_union) == mu.mu_m) as usize;
        s_b_matches += (mu.predicted_mu_m(mu.s_b_only) == mu.mu_m) as usize;
        out.record(check.holds, || {
            witness(
                i,
                &g,
                vec![("A", a.to_vec()), ("B", path.clone()), ("y", vec![y])],
                format!(
                    "gain on A {} vs on A∪B {}; mu p̂ {} q {} m {}",
                    check.gain_a, check.gain_union, mu.mu_phat, mu.mu_q, mu.mu_m
                ),
            )
        });
        i += 1;
    }
    out.notes.push(format!(
        "mu p̂ > 1 with y adjacent to B: {mu_phat_adjacent}; mu p̂ ≠ 0 with y not adjacent: {mu_phat_apart}"
    ));
    out.notes.push(format!(
        "mu m matches case formula: S over A∪B {s_union_matches}/{samples}, S over B {s_b_matches}/{samples}"
    ));
    out
}

/// p̂(A ∪ {y}) against the α, β, γ formula, for y adjacent to A and all
/// maximal-split vertices of A in one component. Reported, not asserted.
fn result1(s: &mut Sampler, samples: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new(Suite::Result1, samples);
    let mut i = 0;
    let mut rejected = 0usize;
    while i < samples {
        let g = s.graph();
        let a = s.subset(g.n(), 0.4);
        let candidates: Vec<usize> = a
            .complement()
            .iter()
            .filter(|&v| g.is_adjacent_to_set(v, &a))
            .collect();
        let Some(&y) = candidates.choose(&mut s.rng) else {
            rejected += 1;
            continue;
        };
        let report = articulation_report(&g, &a);
        let top = a
            .iter()
            .map(|x| report.split_count(x).unwrap_or(0))
            .max()
            .unwrap_or(0);
        let parts = report.components();
        let mut homes = a
            .iter()
            .filter(|&x| report.split_count(x) == Some(top))
            .map(|x| parts.component_of(x));
        let first = homes.next();
        if homes.any(|h| Some(h) != first) {
            rejected += 1;
            continue;
        }
        let abg = alpha_beta_gamma(&g, &a, y).expect("A is non-empty");
        let before = naive_snapshot(&g, &a, 2).p_hat;
        let after = naive_snapshot(&g, &a.with(y), 2).p_hat;
        let ok = abg.phat_after() == after && abg.delta_phat() == before as i64 - after as i64;
        out.record(ok, || {
            witness(
                i,
                &g,
                vec![("A", a.to_vec()), ("y", vec![y])],
                format!(
                    "r {} α {} β {} γ {}: formula p̂ {} vs actual {} (before {before})",
                    abg.r,
                    abg.alpha,
                    abg.beta,
                    abg.gamma,
                    abg.phat_after(),
                    after
                ),
            )
        });
        i += 1;
    }
    out.notes.push(format!(
        "configurations rejected by the sampling filter: {rejected}"
    ));
    out
}

/// The articulation-based snapshot against explicit deletion.
fn phat_oracle(s: &mut Sampler, samples: usize, m_fold: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new(Suite::PhatOracle, samples);
    for i in 0..samples {
        let g = s.graph();
        let c = s.subset(g.n(), 0.5);
        let fast = snapshot(&g, &c, m_fold);
        let naive = naive_snapshot(&g, &c, m_fold);
        out.record(fast == naive, || {
            witness(
                i,
                &g,
                vec![("C", c.to_vec())],
                format!("fast {fast:?} vs naive {naive:?}"),
            )
        });
    }
    out
}
