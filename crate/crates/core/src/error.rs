use thiserror::Error;

/// Errors reported by graph construction and the algorithms built on top of it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge {edge} endpoint {vertex} is out of range for {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),
    #[error("edge {edge} has a non-positive or non-finite {field}")]
    InvalidEdgeValue { edge: usize, field: &'static str },
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("demand does not sum to zero (sum {sum})")]
    DemandNotBalanced { sum: f64 },
    #[error("flow is negative or non-finite on edge {0}")]
    InvalidFlow(usize),
    #[error("cut must be a nonempty proper subset")]
    ImproperCut,
    #[error("vertex {0} is out of range")]
    BadVertex(usize),
    #[error("vertex {to} is not reachable from {from}")]
    Unreachable { from: usize, to: usize },
    #[error("demand cannot be routed in this graph")]
    NotRoutable,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("retry limit of {0} attempts exceeded")]
    RetryLimit(usize),
    #[error("iteration limit of {0} exceeded")]
    IterationLimit(usize),
    #[error("graph violates a precondition: {0}")]
    Precondition(String),
    #[error("{0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
