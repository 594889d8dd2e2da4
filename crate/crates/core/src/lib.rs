//! Exact solvers for edge and vertex deletion to cographs and to trivially
//! perfect graphs.
//!
//! The search solvers branch on small forbidden subgraphs until the graph is
//! P4-sparse, then finish with polynomial routines on the spider
//! decomposition.

pub mod bench;
pub mod decomposition;
pub mod error;
pub mod generate;
pub mod graph;
pub mod hitting_set;
pub mod io;
pub mod obstructions;
pub mod oracle;
pub mod report;
pub mod search;
pub mod spider_solvers;
pub mod target;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, Graph, VertexSet};
pub use target::{DeletionMode, DeletionTarget, Deletions};
pub use search::{minimize, solve, Problem, SearchOptions, SearchStats, Solution};
