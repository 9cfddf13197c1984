use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid bipartite graph: {0}")]
    InvalidBipartite(String),

    #[error("not hypergraph-representable: X-vertex {0} is isolated")]
    NotHypergraphRepresentable(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid degree specification: {0}")]
    InvalidSpec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph has a (2,k)-factor")]
    NoBarrier,

    #[error("enumeration budget exceeded: {what} has size {size}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
