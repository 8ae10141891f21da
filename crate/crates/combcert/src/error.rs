use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("repeated edge {0}-{1}")]
    MultiEdge(usize, usize),

    #[error("edge {0}-{1} is not an edge of the host graph")]
    EdgeNotInHost(usize, usize),

    #[error("packing precondition 2*d1*d2 < n fails: d1={d1}, d2={d2}, n={n}")]
    PackingInfeasibleHint { d1: usize, d2: usize, n: usize },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("argument outside the function domain: {0}")]
    DomainError(String),

    #[error("vertex set is not dominating")]
    NotDominating,

    #[error("host graph is disconnected")]
    HostDisconnected,

    #[error("not found: {0}")]
    NotFound(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
