use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("disconnected graph")]
    Disconnected,

    #[error("graph needs at least {required} nodes, got {got}")]
    TooFewNodes { required: usize, got: usize },

    #[error("node id {node} out of range for {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("not in S^n: {0}")]
    NotInSubtourPolytope(String),

    #[error("not a square point")]
    NotSquarePoint,

    #[error("integral point; tour is the 1-edge cycle")]
    IntegralPoint,

    #[error("not a square graph: {0}")]
    NotSquareGraph(String),

    #[error("invalid bitransition system: {0}")]
    InvalidBitransitionSystem(String),

    #[error("delta-matroid family is empty")]
    EmptyFamily,

    #[error("T has odd cardinality {0}")]
    OddTSet(usize),

    #[error("cost vector has length {got}, expected {expected}")]
    CostLength { expected: usize, got: usize },

    #[error("negative cost {cost} on edge {edge}")]
    NegativeCost { edge: usize, cost: i64 },

    #[error("instance too large for exact oracle: {what} is {size}, cap is {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("theorem violated: {0}")]
    BoundViolated(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
