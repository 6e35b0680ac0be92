//! Python bindings for `cds_forge`.

use cds_forge::generator::{self, GenSpec};
use cds_forge::graph;
use cds_forge::potential::{self, Color};
use cds_forge::solver::{self, SolveConfig};
use cds_forge::{oracle, verify, NodeSet};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An undirected simple graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen)]
pub struct PyGraph {
    inner: cds_forge::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        cds_forge::Graph::new(n, edges)
            .map(|inner| Self { inner })
            .map_err(value_error)
    }

    /// Parses the edge-list text format; labels are replaced by dense ids.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        let parsed = cds_forge::io::parse_edge_list(text).map_err(value_error)?;
        Ok(Self {
            inner: parsed.graph.graph,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={})",
            self.inner.n(),
            self.inner.edge_count()
        )
    }
}

impl PyGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v < self.inner.n() {
            Ok(())
        } else {
            Err(value_error(format!(
                "vertex {v} outside 0..{}",
                self.inner.n()
            )))
        }
    }

    fn set(&self, vertices: &[usize]) -> PyResult<NodeSet> {
        for &v in vertices {
            self.check(v)?;
        }
        Ok(NodeSet::from_vertices(
            self.inner.n(),
            vertices.iter().copied(),
        ))
    }
}

#[pyclass(frozen, get_all)]
pub struct Solution {
    c: Vec<usize>,
    size: usize,
    t_phase1: usize,
    phase1_size: usize,
    phase2_added: usize,
    fallback_used: bool,
    valid: bool,
}

#[pymethods]
impl Solution {
    fn __repr__(&self) -> String {
        format!(
            "Solution(size={}, valid={}, c={:?})",
            self.size, self.valid, self.c
        )
    }
}

#[pyclass(frozen, get_all)]
pub struct Snapshot {
    p: usize,
    p_hat: usize,
    q: usize,
    m: usize,
    f: usize,
    critical_node: Option<usize>,
}

#[pyclass(frozen, get_all)]
pub struct Gain {
    candidate: usize,
    color: String,
    d_phat: i64,
    d_q: i64,
    d_m: i64,
    d_f: i64,
}

#[pyclass(frozen, get_all)]
pub struct Certificate {
    is_biconnected_backbone: bool,
    domination_ok: bool,
    min_outside_coverage: Option<usize>,
    size: usize,
    m_fold: usize,
    valid: bool,
}

fn color_name(c: Color) -> &'static str {
    match c {
        Color::Black => "black",
        Color::Gray => "gray",
        Color::Red => "red",
        Color::White => "white",
    }
}

#[pyfunction]
#[pyo3(signature = (graph, m_fold = 2))]
fn solve(graph: &PyGraph, m_fold: usize) -> PyResult<Solution> {
    let cfg = SolveConfig {
        record_trace: false,
        ..SolveConfig::with_m_fold(m_fold)
    };
    let sol = solver::solve(&graph.inner, &cfg).map_err(value_error)?;
    Ok(Solution {
        c: sol.c.to_vec(),
        size: sol.c.len(),
        t_phase1: sol.t_phase1,
        phase1_size: sol.phase1.size,
        phase2_added: sol.phase2_added,
        fallback_used: sol.fallback_used,
        valid: sol.certificate.valid,
    })
}

#[pyfunction]
#[pyo3(signature = (graph, c, m_fold = 2))]
fn snapshot(graph: &PyGraph, c: Vec<usize>, m_fold: usize) -> PyResult<Snapshot> {
    let s = potential::snapshot(&graph.inner, &graph.set(&c)?, m_fold);
    Ok(Snapshot {
        p: s.p,
        p_hat: s.p_hat,
        q: s.q,
        m: s.m,
        f: s.f,
        critical_node: s.critical_node,
    })
}

#[pyfunction]
#[pyo3(signature = (graph, c, y, m_fold = 2))]
fn gain(graph: &PyGraph, c: Vec<usize>, y: usize, m_fold: usize) -> PyResult<Gain> {
    graph.check(y)?;
    let g = potential::gain(&graph.inner, &graph.set(&c)?, y, m_fold);
    Ok(Gain {
        candidate: g.candidate,
        color: color_name(g.candidate_color).to_string(),
        d_phat: g.d_phat,
        d_q: g.d_q,
        d_m: g.d_m,
        d_f: g.d_f,
    })
}

/// Returns `(theta, optimum)`.
#[pyfunction]
#[pyo3(signature = (graph, m_fold = 2))]
fn exact_min_cds(graph: &PyGraph, m_fold: usize) -> PyResult<(usize, Vec<usize>)> {
    let r = oracle::exact_min_cds(&graph.inner, m_fold, oracle::EXACT_CAP).map_err(value_error)?;
    Ok((r.theta, r.optimum))
}

#[pyfunction]
#[pyo3(signature = (graph, c, m_fold = 2))]
fn verify_certificate(graph: &PyGraph, c: Vec<usize>, m_fold: usize) -> PyResult<Certificate> {
    let cert = verify::verify_certificate(&graph.inner, &graph.set(&c)?, m_fold);
    Ok(Certificate {
        is_biconnected_backbone: cert.is_biconnected_backbone,
        domination_ok: cert.domination_ok,
        min_outside_coverage: cert.min_outside_coverage,
        size: cert.size,
        m_fold: cert.m_fold,
        valid: cert.valid,
    })
}

#[pyfunction]
#[pyo3(signature = (n, seed = 0, extra = 0))]
fn gen_hpath(n: usize, seed: u64, extra: usize) -> PyResult<PyGraph> {
    let spec = GenSpec {
        extra,
        ..GenSpec::hpath(n, seed)
    };
    generator::gen_hpath(&spec)
        .map(|inner| PyGraph { inner })
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (n, seed = 0, radius = None))]
fn gen_geometric(n: usize, seed: u64, radius: Option<f64>) -> PyResult<PyGraph> {
    generator::gen_geometric(&GenSpec::geometric(n, radius, seed))
        .map(|inner| PyGraph { inner })
        .map_err(value_error)
}

/// Returns `(cycle, ears)`.
#[pyfunction]
fn ear_decomposition(graph: &PyGraph) -> PyResult<(Vec<usize>, Vec<Vec<usize>>)> {
    graph::ear_decomposition(&graph.inner)
        .map(|e| (e.cycle, e.ears))
        .map_err(value_error)
}

/// Whether `G[s]` is biconnected; `s` defaults to every vertex.
#[pyfunction]
#[pyo3(signature = (graph, s = None))]
fn is_biconnected(graph: &PyGraph, s: Option<Vec<usize>>) -> PyResult<bool> {
    let set = match s {
        Some(s) => graph.set(&s)?,
        None => graph.inner.vertex_set(),
    };
    Ok(graph::is_biconnected(&graph.inner, &set))
}

#[pymodule]
fn cds_forge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<Solution>()?;
    m.add_class::<Snapshot>()?;
    m.add_class::<Gain>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(snapshot, m)?)?;
    m.add_function(wrap_pyfunction!(gain, m)?)?;
    m.add_function(wrap_pyfunction!(exact_min_cds, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(gen_hpath, m)?)?;
    m.add_function(wrap_pyfunction!(gen_geometric, m)?)?;
    m.add_function(wrap_pyfunction!(ear_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(is_biconnected, m)?)?;
    Ok(())
}
