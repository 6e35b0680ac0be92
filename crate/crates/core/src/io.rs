//! Edge-list files.
//!
//! ```text
//! # comment
//! <n> <m_edges>
//! <u> <v>        (m_edges lines; labels are arbitrary whitespace-free tokens)
//! ```
//!
//! Labels map to dense ids: ascending numeric order when every label is an
//! integer, first appearance otherwise.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, NodeSet};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> InputError {
    InputError::Parse {
        line,
        message: message.into(),
    }
}

/// A graph together with the original label of each internal id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabeledGraph {
    /// Labels `0..n` as decimal strings.
    pub fn with_numeric_labels(graph: Graph) -> Self {
        let labels: Vec<String> = (0..graph.n()).map(|v| v.to_string()).collect();
        Self::new(graph, labels)
    }

    fn new(graph: Graph, labels: Vec<String>) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Self {
            graph,
            labels,
            index,
        }
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn labels_of(&self, vertices: impl IntoIterator<Item = usize>) -> Vec<String> {
        vertices
            .into_iter()
            .map(|v| self.labels[v].clone())
            .collect()
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<NodeSet, InputError> {
        let mut set = NodeSet::new(self.graph.n());
        for label in labels {
            let id = self
                .id_of(label.as_ref())
                .ok_or_else(|| InputError::UnknownLabel(label.as_ref().to_string()))?;
            set.insert(id);
        }
        Ok(set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub graph: LabeledGraph,
    /// Edge lines that repeated an earlier edge.
    pub duplicate_edges: usize,
}

pub fn parse_edge_list(text: &str) -> Result<Parsed, InputError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut raw: Vec<(usize, String, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(parse_err(
                lineno,
                format!("expected 2 fields, found {}", tokens.len()),
            ));
        }
        if header.is_none() {
            let n = tokens[0]
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad vertex count {:?}", tokens[0])))?;
            let m = tokens[1]
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad edge count {:?}", tokens[1])))?;
            header = Some((lineno, n, m));
            continue;
        }
        if tokens[0] == tokens[1] {
            return Err(parse_err(lineno, format!("self-loop on {:?}", tokens[0])));
        }
        raw.push((lineno, tokens[0].to_string(), tokens[1].to_string()));
    }
    let (header_line, n, m) = header.ok_or_else(|| parse_err(1, "missing header line"))?;
    if raw.len() != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges, file has {}", raw.len()),
        ));
    }

    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashMap<&str, ()> = HashMap::new();
    for (_, u, v) in &raw {
        for l in [u, v] {
            if seen.insert(l.as_str(), ()).is_none() {
                labels.push(l.clone());
            }
        }
    }
    if labels.iter().all(|l| l.parse::<i64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<i64>().expect("checked numeric"));
    }
    if labels.len() != n {
        return Err(parse_err(
            header_line,
            format!(
                "header declares {n} vertices, edges mention {}",
                labels.len()
            ),
        ));
    }
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut pairs = Vec::with_capacity(raw.len());
    let mut unique = std::collections::HashSet::new();
    for (_, u, v) in &raw {
        let (a, b) = (index[u.as_str()], index[v.as_str()]);
        unique.insert((a.min(b), a.max(b)));
        pairs.push((a, b));
    }
    let graph = Graph::new(n, pairs).expect("labels are dense and loops rejected");
    Ok(Parsed {
        duplicate_edges: raw.len() - unique.len(),
        graph: LabeledGraph::new(graph, labels),
    })
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Parsed, InputError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text)
}

pub fn format_edge_list(g: &LabeledGraph) -> String {
    let mut out = format!("{} {}\n", g.graph.n(), g.graph.edge_count());
    for (u, v) in g.graph.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).expect("writing to a String");
    }
    out
}
