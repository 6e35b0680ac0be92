use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) is a self-loop")]
    SelfLoop { u: usize, v: usize },

    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("graph has {n} vertices, at least 3 are required")]
    TooFewVertices { n: usize },

    #[error("graph is not biconnected{}", match .cut_vertex {
        Some(x) => format!(" (cut vertex {x})"),
        None => " (disconnected)".to_string(),
    })]
    NotBiconnected { cut_vertex: Option<usize> },

    #[error("node set is empty")]
    EmptySet,

    #[error("m_fold must be at least 2, got {0}")]
    InvalidMFold(usize),

    #[error("exact search is capped at {cap} vertices, graph has {n}")]
    TooLarge { n: usize, cap: usize },

    #[error("no biconnected draw after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("merge phase stalled: {0}")]
    Infeasible(String),
}
