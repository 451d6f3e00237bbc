use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates an operation's precondition (bad rank, index, shape...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// Two independent computations that must agree did not.
    #[error("invariant breach: {0}")]
    InvariantBreach(String),

    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceCap {
        what: String,
        needed: usize,
        cap: usize,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::RankMismatch { .. } | Error::Parse(_) => 1,
            Error::InvariantBreach(_) => 2,
            Error::ResourceCap { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
