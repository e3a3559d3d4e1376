use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop at vertex {vertex}{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    SelfLoop { vertex: Vertex, line: Option<usize> },

    #[error("graph is not a subgraph of the host")]
    NotSubgraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph needs at least {needed} vertices, found {found}")]
    TooSmall { needed: usize, found: usize },

    #[error("graph has {0} vertices; the exhaustive search supports at most 64")]
    TooLarge(usize),

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),

    #[error("endpoints must be distinct (both are {0})")]
    SameEndpoints(Vertex),

    #[error("required edge {0}-{1} is not an edge of the host graph")]
    EdgeNotInHost(Vertex, Vertex),

    #[error("input is not a 2-block")]
    NotTwoBlock,

    #[error("component is not a caterpillar")]
    NotCaterpillar,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("substitution recipe does not fit the graph: {0}")]
    RecipeMismatch(String),

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    /// A per-block witness that should always exist could not
    /// be found, or a splice produced an invalid object.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
