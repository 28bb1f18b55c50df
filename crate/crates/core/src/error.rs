use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called outside of its precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("brute-force oracle refused: {num_vars} variables exceeds cap of {cap}")]
    OracleCap { num_vars: usize, cap: usize },

    #[error("orbit expansion exceeded the limit of {limit} points")]
    OrbitOverflow { limit: usize },

    #[error("iteration limit of {0} reached")]
    IterationLimit(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
