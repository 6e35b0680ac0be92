//! Two-phase greedy approximation of minimum 2-connected, m-fold dominating
//! sets ((2,m)-CDS) on biconnected graphs, with exact oracles, instance
//! generators and certificate checking.

pub mod bench;
pub mod check;
pub mod cli;
pub mod error;
pub mod generator;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod potential;
pub mod report;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, NodeSet};
