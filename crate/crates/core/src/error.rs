use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad classes of failure, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The caller passed arguments that can never be valid.
    Usage,
    /// The arguments are well formed but do not match the current graph state.
    State,
    /// A metric has no value on this graph.
    UndefinedMetric,
    /// Input data could not be read or parsed.
    Data,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("edge {{{0}, {1}}} is already present")]
    EdgeExists(usize, usize),

    #[error("edge {{{0}, {1}}} is not present")]
    EdgeMissing(usize, usize),

    #[error("inconsistent state: {0}")]
    State(String),

    #[error("{0} is undefined on this graph")]
    UndefinedMetric(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::VertexOutOfRange { .. } | Error::SelfLoop(_) | Error::InvalidArgument(_) => {
                ErrorClass::Usage
            }
            Error::EdgeExists(..) | Error::EdgeMissing(..) | Error::State(_) => ErrorClass::State,
            Error::UndefinedMetric(_) => ErrorClass::UndefinedMetric,
            Error::Parse { .. } | Error::Json(_) | Error::Io(_) => ErrorClass::Data,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
