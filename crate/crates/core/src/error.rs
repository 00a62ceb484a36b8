use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("graph is not connected")]
    NotConnected,

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("vertex set does not induce a connected subgraph")]
    SetNotConnected,

    #[error("invalid layering: {0}")]
    InvalidLayering(String),

    #[error("invalid tree-decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("decomposition has no nonempty bag")]
    EmptyDecomposition,

    #[error("graph has {n} vertices, above the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid product structure: {0}")]
    InvalidStructure(String),

    #[error("not a planar triangulation: {0}")]
    NotTriangulation(String),

    #[error("internal construction failure: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
