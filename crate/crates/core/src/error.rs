use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// identify the offending input without a debugger.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular matrix {0}")]
    Singular(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at z = {point} in term {term}")]
    Pole { point: String, term: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("iteration cap {cap} exceeded while iterating from {start}")]
    NonTermination { start: String, cap: u64 },

    #[error("could not find {needed} pole-free sample points")]
    Sampling { needed: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    /// Process exit code for this error: 2 for bad input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse(_) | Error::Domain(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}

macro_rules! invariant {
    ($($arg:tt)*) => { $crate::error::Error::Invariant(format!($($arg)*)) };
}

pub(crate) use domain;
pub(crate) use invariant;
