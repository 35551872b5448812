use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside the vertex range 1..={n}")]
    OutOfRangeVertex { vertex: usize, n: usize },

    #[error("hyperedge {edge:?} has {found} distinct vertices, expected {expected}")]
    WrongEdgeSize {
        edge: Vec<usize>,
        expected: usize,
        found: usize,
    },

    #[error("need n >= 1 and r >= 2, got n = {n}, r = {r}")]
    NonPositiveParams { n: usize, r: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("hyperedge {0:?} is already present")]
    ExtraEdgeAlreadyPresent(Vec<usize>),

    #[error("unknown hyperedge id {id} (hypergraph has {count} hyperedges)")]
    UnknownEdgeId { id: usize, count: usize },

    #[error("desk limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("node budget of {0} exhausted")]
    BudgetExhausted(u64),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
