use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Every variant carries a stable machine-readable code (see [`Error::code`])
/// so front ends can report failures without parsing messages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("ambient module mismatch: {0}")]
    AmbientMismatch(String),

    #[error("degree bound exceeded: intermediate degree {degree} > limit {limit}")]
    DegreeBound { degree: u32, limit: u32 },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch(_) => "RING_MISMATCH",
            Error::AmbientMismatch(_) => "AMBIENT_MISMATCH",
            Error::DegreeBound { .. } => "DEGREE_BOUND",
            Error::ResourceLimit(_) => "RESOURCE_LIMIT",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Validation(_) => "VALIDATION_ERROR",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::Unsupported(_) => "UNSUPPORTED_INSTANCE",
            Error::Inconsistency(_) => "INTERNAL_INCONSISTENCY",
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
