use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0} does not exist")]
    MissingEdge(Edge),
    #[error("budget must be non-negative, got {0}")]
    NegativeBudget(i64),
    #[error("graph is not P4-sparse (witness {0:?})")]
    NotP4Sparse(Vec<usize>),
    #[error("graph contains an induced C4 (witness {0:?})")]
    ContainsC4([usize; 4]),
    #[error("expected a graph on {expected} vertices, got {got}")]
    WrongVertexCount { expected: usize, got: usize },
    #[error("no branching rules for {0}")]
    UnsupportedRules(String),
    #[error("{kind} has no breaking vertices")]
    NoBreakingVertices { kind: String },
    #[error("oracle instance too large: {what} = {value} exceeds limit {limit}")]
    OracleTooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("problem {0} is not supported by this solver")]
    UnsupportedProblem(String),
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
