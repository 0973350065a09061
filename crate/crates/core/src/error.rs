use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent caller input (bad index, size mismatch, ...).
    #[error("input error: {0}")]
    Input(String),

    /// Parameters outside the domain of an arithmetic routine.
    #[error("domain error: {0}")]
    Domain(String),

    /// A brute-force routine was asked to work beyond its size cap.
    #[error("capacity error: {what} is limited to {cap}, got {got}")]
    Capacity {
        what: &'static str,
        cap: usize,
        got: usize,
    },

    /// A precondition on a structured input was violated.
    #[error("contract error: {0}")]
    Contract(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A constructive algorithm produced an output that failed its own check.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
