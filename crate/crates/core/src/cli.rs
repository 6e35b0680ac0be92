//! The `cds-forge` command line.
//!
//! Exit codes: 0 success, 1 input error, 2 invalid certificate (or, for
//! `bench` and `check`, a violated property).

use std::ffi::OsString;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::bench::{self, BenchConfig, BenchKind};
use crate::check::{run_suite, Suite};
use crate::generator::{generate, GenKind, GenSpec};
use crate::io::{format_edge_list, read_edge_list, LabeledGraph, Parsed};
use crate::oracle::{exact_min_cds, EXACT_CAP};
use crate::report::{build_report, render_dot, ReportInput, Timings};
use crate::solver::{solve, SolveConfig};
use crate::verify::{ratio_report, verify_certificate};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cds-forge",
    version,
    about = "Approximate minimum (2,m)-connected dominating sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an edge-list graph and write a JSON report.
    Solve {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        m_fold: usize,
        /// Also compute the exact optimum (n ≤ 20) and the ratio.
        #[arg(long)]
        exact: bool,
        /// Include the step trace in the report.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
        /// Report destination; stdout when omitted.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        /// Report zero timings so output is byte-for-byte reproducible.
        #[arg(long)]
        no_timings: bool,
    },
    /// Print the exact optimum of a small graph.
    Exact {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        m_fold: usize,
    },
    /// Generate a random biconnected graph.
    Gen {
        #[arg(long, default_value = "hpath")]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Geometric connection radius; defaults to sqrt(3 ln n / (π n)).
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra chords for hpath graphs.
        #[arg(long, default_value_t = 0)]
        extra: usize,
        /// Destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a batch of generated instances and emit CSV rows.
    Bench {
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Inclusive range, e.g. `10..100`.
        #[arg(long, default_value = "10..100", value_parser = parse_range)]
        n_range: (usize, usize),
        /// hpath, geometric or mixed.
        #[arg(long, default_value = "mixed")]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Solve exactly every instance with at most this many vertices.
        #[arg(long, default_value_t = 0)]
        exact_max_n: usize,
        #[arg(long, default_value_t = 2)]
        m_fold: usize,
        /// Destination; stdout when omitted.
        #[arg(long, value_name = "OUT")]
        csv: Option<PathBuf>,
        #[arg(long)]
        no_timings: bool,
    },
    /// Run a randomized property suite.
    Check {
        /// lemma3, result1, monotone or phat-oracle.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        m_fold: usize,
        /// Where counterexamples are written on failure.
        #[arg(long, default_value = "counterexamples")]
        out_dir: PathBuf,
    },
    /// Check a candidate backbone against a graph.
    Verify {
        path: PathBuf,
        /// Comma-separated vertex labels.
        #[arg(long, conflicts_with = "report", required_unless_present = "report")]
        set: Option<String>,
        /// A JSON report whose solution is re-checked.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Defaults to the report's m_fold, else 2.
        #[arg(long)]
        m_fold: Option<usize>,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

type CliResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Solve {
            path,
            m_fold,
            exact,
            trace,
            dot,
            json,
            no_timings,
        } => cmd_solve(
            &path,
            m_fold,
            exact,
            trace,
            dot.as_deref(),
            json.as_deref(),
            !no_timings,
        ),
        Command::Exact { path, m_fold } => cmd_exact(&path, m_fold),
        Command::Gen {
            kind,
            n,
            radius,
            seed,
            extra,
            out,
        } => cmd_gen(&kind, n, radius, seed, extra, out.as_deref()),
        Command::Bench {
            count,
            n_range,
            kind,
            seed,
            exact_max_n,
            m_fold,
            csv,
            no_timings,
        } => cmd_bench(
            &kind,
            BenchConfig {
                count,
                n_min: n_range.0,
                n_max: n_range.1,
                kind: BenchKind::Fixed(GenKind::Hpath),
                seed,
                exact_max_n,
                m_fold,
                threads: bench::threads_from_env(),
                timings: !no_timings,
            },
            csv.as_deref(),
        ),
        Command::Check {
            suite,
            samples,
            seed,
            m_fold,
            out_dir,
        } => cmd_check(&suite, samples, seed, m_fold, &out_dir),
        Command::Verify {
            path,
            set,
            report,
            m_fold,
        } => cmd_verify(&path, set.as_deref(), report.as_deref(), m_fold),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<Parsed, Failure> {
    let parsed =
        read_edge_list(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    if parsed.duplicate_edges > 0 {
        eprintln!(
            "warning: {} duplicate edge line(s) ignored",
            parsed.duplicate_edges
        );
    }
    Ok(parsed)
}

/// Solver errors in terms of the input's labels.
fn describe(g: &LabeledGraph, e: &Error) -> String {
    match e {
        Error::NotBiconnected {
            cut_vertex: Some(x),
        } => format!("graph is not biconnected (cut vertex {})", g.label(*x)),
        other => other.to_string(),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn cmd_solve(
    path: &Path,
    m_fold: usize,
    exact: bool,
    trace: bool,
    dot: Option<&Path>,
    json: Option<&Path>,
    timings: bool,
) -> CliResult {
    let parsed = load(path)?;
    let g = &parsed.graph;
    let config = SolveConfig {
        m_fold,
        record_trace: trace,
        ..SolveConfig::default()
    };
    let start = Instant::now();
    let solution = solve(&g.graph, &config).map_err(|e| input_error(describe(g, &e)))?;
    let solve_ms = ms(start);

    let mut exact_ms = None;
    let optimum = if !exact {
        None
    } else if g.graph.n() > EXACT_CAP {
        eprintln!(
            "warning: exact search skipped, graph has {} vertices (cap {EXACT_CAP})",
            g.graph.n()
        );
        None
    } else {
        let start = Instant::now();
        let result =
            exact_min_cds(&g.graph, m_fold, EXACT_CAP).map_err(|e| input_error(describe(g, &e)))?;
        exact_ms = Some(ms(start));
        Some(result)
    };

    let ratio = ratio_report(
        g.graph.n(),
        g.graph.max_degree(),
        solution.c.len(),
        optimum.as_ref().map(|o| o.theta),
        m_fold,
    );
    let report = build_report(ReportInput {
        graph: g,
        duplicate_edges: parsed.duplicate_edges,
        config: &config,
        seed: None,
        solution: &solution,
        ratio,
        exact: optimum.as_ref(),
        include_trace: trace,
        timings: if timings {
            Timings { solve_ms, exact_ms }
        } else {
            Timings {
                solve_ms: 0.0,
                exact_ms: exact_ms.map(|_| 0.0),
            }
        },
    });
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    write_output(json, &text)?;
    if let Some(dot) = dot {
        write_output(Some(dot), &render_dot(g, &solution.c, m_fold))?;
    }
    if json.is_some() {
        println!(
            "size={} valid={} fallback_used={}",
            solution.c.len(),
            solution.certificate.valid,
            solution.fallback_used
        );
    }
    Ok(if solution.certificate.valid {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

fn cmd_exact(path: &Path, m_fold: usize) -> CliResult {
    let parsed = load(path)?;
    let g = &parsed.graph;
    let result =
        exact_min_cds(&g.graph, m_fold, EXACT_CAP).map_err(|e| input_error(describe(g, &e)))?;
    println!("theta={}", result.theta);
    println!(
        "optimum={}",
        g.labels_of(result.optimum.iter().copied()).join(",")
    );
    Ok(EXIT_OK)
}

fn cmd_gen(
    kind: &str,
    n: usize,
    radius: Option<f64>,
    seed: u64,
    extra: usize,
    out: Option<&Path>,
) -> CliResult {
    let kind: GenKind = kind.parse().map_err(input_error)?;
    let spec = GenSpec {
        kind,
        n,
        extra,
        radius,
        seed,
    };
    let g = generate(&spec).map_err(input_error)?;
    write_output(
        out,
        &format_edge_list(&LabeledGraph::with_numeric_labels(g.clone())),
    )?;
    let summary = format!(
        "n={} delta={} edges={}",
        g.n(),
        g.max_degree(),
        g.edge_count()
    );
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(EXIT_OK)
}

fn cmd_bench(kind: &str, mut cfg: BenchConfig, csv: Option<&Path>) -> CliResult {
    cfg.kind = kind.parse().map_err(input_error)?;
    if cfg.n_min < 3 {
        return Err(input_error("--n-range must start at 3 or more"));
    }
    let rows = bench::run(&cfg);
    let mut buf = Vec::new();
    bench::write_csv(&rows, &mut buf).map_err(input_error)?;
    write_output(csv, &String::from_utf8(buf).expect("CSV is UTF-8"))?;

    let s = bench::summarize(&rows);
    let fmt = |v: Option<f64>| v.map_or("n/a".to_string(), |r| format!("{r:.4}"));
    let summary = format!(
        "instances={} solved={} exact={} max_ratio={} mean_ratio={} fallback={} violations={} phase1_postcondition_failures={} budget_overruns={}",
        s.instances,
        s.solved,
        s.exact_solved,
        fmt(s.max_ratio),
        fmt(s.mean_ratio),
        s.fallback_count,
        s.violations,
        s.phase1_postcondition_failures,
        s.budget_overruns
    );
    if csv.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(if s.violations == 0 {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

fn cmd_check(suite: &str, samples: usize, seed: u64, m_fold: usize, out_dir: &Path) -> CliResult {
    let suite: Suite = suite.parse().map_err(input_error)?;
    let outcome = run_suite(suite, samples, seed, m_fold);
    println!(
        "suite={} samples={} pass={} fail={} asserted={}",
        suite.name(),
        outcome.samples,
        outcome.passed,
        outcome.failed,
        outcome.asserted
    );
    for note in &outcome.notes {
        println!("  {note}");
    }
    if outcome.failed > 0 {
        let written = outcome
            .dump(out_dir)
            .map_err(|e| input_error(format!("{}: {e}", out_dir.display())))?;
        println!(
            "  {} counterexample(s) written to {}",
            written.len(),
            out_dir.display()
        );
    }
    Ok(if outcome.ok() { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_verify(
    path: &Path,
    set: Option<&str>,
    report: Option<&Path>,
    m_fold: Option<usize>,
) -> CliResult {
    let parsed = load(path)?;
    let g = &parsed.graph;
    let (labels, report_m) = match (set, report) {
        (Some(set), _) => (
            set.split(',')
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(String::from)
                .collect::<Vec<_>>(),
            None,
        ),
        (None, Some(report)) => read_report_solution(report)?,
        (None, None) => unreachable!("clap requires --set or --report"),
    };
    let m_fold = m_fold.or(report_m).unwrap_or(2);
    let c = g.set_from_labels(&labels).map_err(input_error)?;
    let certificate = verify_certificate(&g.graph, &c, m_fold);
    println!(
        "{}",
        serde_json::to_string_pretty(&certificate).expect("certificate serializes")
    );
    Ok(if certificate.valid {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

fn read_report_solution(path: &Path) -> Result<(Vec<String>, Option<usize>), Failure> {
    let bad = |what: &str| input_error(format!("{}: {what}", path.display()));
    let text = std::fs::read_to_string(path).map_err(|e| bad(&e.to_string()))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
    let labels = value["solution"]["c"]
        .as_array()
        .ok_or_else(|| bad("missing solution.c"))?
        .iter()
        .map(|l| {
            l.as_str()
                .map(String::from)
                .ok_or_else(|| bad("non-string label in solution.c"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m_fold = value["config"]["m_fold"].as_u64().map(|m| m as usize);
    Ok((labels, m_fold))
}
