use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A configured budget (pair limit, enumeration limit, bound) was exceeded.
    #[error("resource budget exhausted: {0}")]
    Resource(String),
    /// A precondition that the caller must establish was not verified.
    #[error("refused: {0}")]
    Refused(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("exponent overflow while computing {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Shifts a single-line parse error to its position inside a larger script.
    pub fn at_line(self, line: usize, column_offset: usize) -> Self {
        match self {
            Error::Parse { column, message, .. } => Error::Parse {
                line,
                column: column + column_offset,
                message,
            },
            other => other,
        }
    }
}
