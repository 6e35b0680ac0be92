//! One test per acceptance criterion. Each prints a single PASS/FAIL line to
//! stderr (bypassing output capture) and then asserts the criterion.

use std::io::Write as _;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use cds_forge::bench::{self, BenchConfig, BenchKind};
use cds_forge::check::{run_suite, CheckOutcome, Suite};
use cds_forge::generator::{gen_geometric, gen_hpath, generate, GenSpec};
use cds_forge::graph::{articulation_report, ear_decomposition, is_biconnected};
use cds_forge::io::{format_edge_list, parse_edge_list, LabeledGraph};
use cds_forge::oracle::{exact_min_cds, EXACT_CAP};
use cds_forge::potential::snapshot;
use cds_forge::solver::{solve, Solution, SolveConfig};
use cds_forge::{Graph, NodeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;

fn report(id: u32, title: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "criterion {id:>2} [{title}]: {verdict} ({detail})");
}

fn artifact_dir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .join("acceptance")
        .join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn dump_graph(dir: &std::path::Path, name: &str, g: &Graph) {
    let text = format_edge_list(&LabeledGraph::with_numeric_labels(g.clone()));
    std::fs::write(dir.join(name), text).unwrap();
}

fn dump_check(outcome: &CheckOutcome) -> String {
    if outcome.failed == 0 {
        return String::new();
    }
    let dir = artifact_dir(outcome.suite.name());
    outcome.dump(&dir).unwrap();
    format!("; counterexamples in {}", dir.display())
}

struct Instance {
    seed: u64,
    graph: Graph,
    solution: Solution,
}

struct Family {
    instances: Vec<Instance>,
    generation_failures: usize,
    elapsed: Duration,
}

/// 1000 mixed hpath/geometric instances with n in 10..=100, solved once and
/// shared by the criteria that inspect them.
fn family() -> &'static Family {
    static FAMILY: OnceLock<Family> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let cfg = BenchConfig {
            count: 1000,
            n_min: 10,
            n_max: 100,
            kind: BenchKind::Mixed,
            seed: SEED,
            ..BenchConfig::default()
        };
        let start = Instant::now();
        let mut instances = Vec::new();
        let mut generation_failures = 0;
        let solve_cfg = SolveConfig {
            record_trace: false,
            ..SolveConfig::default()
        };
        for (seed, n, kind) in bench::plan(&cfg) {
            let spec = GenSpec {
                kind,
                n,
                extra: 0,
                radius: None,
                seed,
            };
            let Ok(graph) = generate(&spec) else {
                generation_failures += 1;
                continue;
            };
            let solution = solve(&graph, &solve_cfg).expect("generated graphs are biconnected");
            instances.push(Instance {
                seed,
                graph,
                solution,
            });
        }
        Family {
            instances,
            generation_failures,
            elapsed: start.elapsed(),
        }
    })
}

#[test]
fn criterion_01_valid_certificates_at_scale() {
    let fam = family();
    let valid = fam
        .instances
        .iter()
        .filter(|i| i.solution.certificate.valid)
        .count();
    let pass =
        fam.generation_failures == 0 && valid == 1000 && fam.elapsed < Duration::from_secs(300);
    report(
        1,
        "1000 mixed instances valid in < 5 min",
        pass,
        &format!(
            "{valid}/{} valid, {} generation failures, {:.1} s",
            fam.instances.len(),
            fam.generation_failures,
            fam.elapsed.as_secs_f64()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_02_phase1_postconditions() {
    let fam = family();
    let m_positive = fam
        .instances
        .iter()
        .filter(|i| !i.solution.phase1.m_zero)
        .count();
    let not_biconnected = fam
        .instances
        .iter()
        .filter(|i| i.solution.phase1.non_biconnected_components > 0)
        .count();
    let with_cut = fam
        .instances
        .iter()
        .filter(|i| i.solution.phase1.components_with_cut_vertex > 0)
        .count();
    let dir = artifact_dir("phase1");
    for inst in fam
        .instances
        .iter()
        .filter(|i| !i.solution.phase1.postconditions_hold())
        .take(20)
    {
        dump_graph(&dir, &format!("seed-{}.txt", inst.seed), &inst.graph);
    }
    let pass = m_positive == 0 && not_biconnected == 0;
    report(
        2,
        "phase 1 ends with m = 0 and biconnected components",
        pass,
        &format!(
            "m > 0 on {m_positive}/{n}; some component not biconnected on {not_biconnected}/{n} \
             ({with_cut} with a cut vertex); examples in {}",
            dir.display(),
            n = fam.instances.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_03_monotonicity() {
    let outcome = run_suite(Suite::Monotone, 10_000, SEED, 2);
    let pass = outcome.failed == 0;
    report(
        3,
        "gain ≥ 0 on 10k samples, ≥ 1 on every phase-1 step",
        pass,
        &format!(
            "{}/{} samples pass; {}{}",
            outcome.passed,
            outcome.samples,
            outcome.notes.join("; "),
            dump_check(&outcome)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_04_path_lemma() {
    let outcome = run_suite(Suite::Lemma3, 10_000, SEED, 2);
    let pass = outcome.failed == 0;
    report(
        4,
        "gain on A∪B ≤ gain on A + 1 for 10k path triples",
        pass,
        &format!(
            "{}/{} triples hold{}",
            outcome.passed,
            outcome.samples,
            dump_check(&outcome)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_snapshot_matches_naive() {
    let outcome = run_suite(Suite::PhatOracle, 10_000, SEED, 2);
    let pass = outcome.failed == 0 && outcome.passed == 10_000;
    report(
        5,
        "snapshot ≡ naive recomputation on 10k samples",
        pass,
        &format!(
            "{}/{} agree{}",
            outcome.passed,
            outcome.samples,
            dump_check(&outcome)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_06_ratio_bound_on_small_instances() {
    let rows = bench::run(&BenchConfig {
        count: 200,
        n_min: 8,
        n_max: 12,
        kind: BenchKind::Mixed,
        seed: SEED,
        exact_max_n: 12,
        timings: false,
        ..BenchConfig::default()
    });
    let mut within = 0;
    let mut worst: f64 = 0.0;
    for row in &rows {
        let Some(theta) = row.theta else { continue };
        let ratio = row.greedy_size as f64 / theta as f64;
        worst = worst.max(ratio);
        if row.error.is_none()
            && row.certificate_valid
            && ratio <= 3.0 + ((row.delta + 2) as f64).ln()
        {
            within += 1;
        }
    }
    let pass = rows.len() >= 200 && within == rows.len();
    report(
        6,
        "ratio ≤ 3 + ln(Δ+2) on 200 exact-solved instances, n in 8..=12",
        pass,
        &format!(
            "{within}/{} within bound, worst ratio {worst:.3}",
            rows.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_phase2_budget() {
    let fam = family();
    let total = fam.instances.len();
    let fallback: Vec<&Instance> = fam
        .instances
        .iter()
        .filter(|i| i.solution.fallback_used)
        .collect();
    let overruns: Vec<&Instance> = fam
        .instances
        .iter()
        .filter(|i| !i.solution.fallback_used && i.solution.phase2_added > 2 * i.solution.t_phase1)
        .collect();
    let overruns_after_good_phase1 = overruns
        .iter()
        .filter(|i| i.solution.phase1.postconditions_hold())
        .count();
    let dir = artifact_dir("phase2");
    for inst in &fallback {
        dump_graph(
            &dir,
            &format!("fallback-seed-{}.txt", inst.seed),
            &inst.graph,
        );
    }
    for inst in overruns.iter().take(20) {
        dump_graph(
            &dir,
            &format!("overrun-seed-{}.txt", inst.seed),
            &inst.graph,
        );
    }
    let pass = overruns.is_empty();
    report(
        7,
        "phase2_added ≤ 2·t without fallback",
        pass,
        &format!(
            "{} overruns among {} instances without fallback ({overruns_after_good_phase1} of them \
             after phase 1 met its postconditions); fallback used on {}/{total} ({:.1}%); \
             instances in {}",
            overruns.len(),
            total - fallback.len(),
            fallback.len(),
            100.0 * fallback.len() as f64 / total as f64,
            dir.display()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_08_eight_node_golden() {
    let text = "8 10\n1 2\n1 3\n2 4\n3 4\n4 5\n5 6\n6 7\n2 7\n7 8\n4 8\n";
    let g = parse_edge_list(text).unwrap().graph;
    let exact = exact_min_cds(&g.graph, 2, EXACT_CAP).unwrap();
    let optimum = g.labels_of(exact.optimum.iter().copied());
    let empty_f = snapshot(&g.graph, &NodeSet::new(8), 2).f;
    let sol = solve(&g.graph, &SolveConfig::default()).unwrap();
    let first = &sol.trace[0];
    let first_label = g.label(first.chosen[0]).to_string();
    let first_gain = first.gain.map(|b| b.d_f);
    let pass = exact.theta == 7
        && optimum == ["1", "2", "3", "4", "5", "6", "7"]
        && first_label == "4"
        && first_gain == Some(5)
        && empty_f == 16
        && sol.certificate.valid;
    report(
        8,
        "eight-node example",
        pass,
        &format!(
            "theta {} optimum {{{}}}; first pick {first_label} with gain {first_gain:?}; f(∅) = {empty_f}; \
             certificate valid {}",
            exact.theta,
            optimum.join(","),
            sol.certificate.valid
        ),
    );
    assert!(pass);
}

/// Components of G[s] by flooding.
fn flood_count(g: &Graph, s: &NodeSet) -> usize {
    let mut seen = NodeSet::new(g.n());
    let mut count = 0;
    for start in s.iter() {
        if !seen.insert(start) {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if s.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    count
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

/// A mix of biconnected draws and perturbations that usually break them.
fn ear_sample(rng: &mut ChaCha8Rng, i: usize) -> Graph {
    let n = rng.random_range(4..=30);
    let base = if rng.random_bool(0.5) {
        gen_hpath(&GenSpec::hpath(n, rng.random())).unwrap()
    } else {
        gen_geometric(&GenSpec::geometric(n, None, rng.random()))
            .unwrap_or_else(|_| gen_hpath(&GenSpec::hpath(n, rng.random())).unwrap())
    };
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    match i % 4 {
        0 => base,
        1 => {
            for _ in 0..rng.random_range(1..=3) {
                let k = rng.random_range(0..edges.len());
                edges.swap_remove(k);
            }
            Graph::new(n, edges).unwrap()
        }
        2 => {
            edges.push((rng.random_range(0..n), n));
            Graph::new(n + 1, edges).unwrap()
        }
        _ => {
            let p = rng.random_range(0.05..0.6);
            random_graph(rng, n.min(16), p)
        }
    }
}

#[test]
fn criterion_09_ears_and_split_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut agree, mut positives, mut invalid_ears) = (0, 0, 0);
    for i in 0..1000 {
        let g = ear_sample(&mut rng, i);
        let biconnected = is_biconnected(&g, &g.vertex_set());
        let ears = ear_decomposition(&g);
        positives += biconnected as usize;
        agree += (ears.is_ok() == biconnected) as usize;
        if let Ok(e) = ears {
            invalid_ears += e.validate(&g).is_err() as usize;
        }
    }

    let mut split_agree = 0;
    for _ in 0..10_000 {
        let n = rng.random_range(3..=20);
        let p = rng.random_range(0.05..0.5);
        let g = random_graph(&mut rng, n, p);
        let s = NodeSet::from_vertices(n, (0..n).filter(|_| rng.random_bool(0.6)));
        let report = articulation_report(&g, &s);
        let ok = report.components().count() == flood_count(&g, &s)
            && s.iter()
                .all(|x| report.count_without(x) == Some(flood_count(&g, &s.without(x))));
        split_agree += ok as usize;
    }

    let pass = agree == 1000 && invalid_ears == 0 && split_agree == 10_000;
    report(
        9,
        "ear decomposition ⇔ biconnected; split counts match deletion",
        pass,
        &format!(
            "{agree}/1000 agree ({positives} biconnected), {invalid_ears} malformed decompositions; \
             {split_agree}/10000 split-count samples match"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_performance() {
    let g = gen_geometric(&GenSpec::geometric(500, None, SEED)).unwrap();
    let start = Instant::now();
    let sol = solve(&g, &SolveConfig::default()).unwrap();
    let solve_time = start.elapsed();

    let small = gen_hpath(&GenSpec::hpath(14, SEED)).unwrap();
    let start = Instant::now();
    let exact = exact_min_cds(&small, 2, EXACT_CAP).unwrap();
    let exact_time = start.elapsed();

    let pass = sol.certificate.valid
        && solve_time < Duration::from_secs(10)
        && exact_time < Duration::from_secs(60);
    report(
        10,
        "n = 500 solve < 10 s, n = 14 exact < 60 s",
        pass,
        &format!(
            "solve {:.3} s (size {}, valid {}); exact {:.3} s (theta {}, {} subsets)",
            solve_time.as_secs_f64(),
            sol.c.len(),
            sol.certificate.valid,
            exact_time.as_secs_f64(),
            exact.theta,
            exact.subsets_examined
        ),
    );
    assert!(pass);
}
