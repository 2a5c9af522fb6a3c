use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on user-supplied parameters failed (e.g. `m` does not
    /// divide `n`, unsupported rank, non-prime modulus).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A vector had the wrong length for the ambient root system.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Two values built over different root data were combined.
    #[error("datum mismatch: {0}")]
    DatumMismatch(String),

    /// A 1-based simple-root index was outside `1..=rank`.
    #[error("index out of range: {index} (rank {rank})")]
    IndexOutOfRange { index: usize, rank: usize },

    /// An internal consistency check failed; this signals a bug rather than
    /// bad input.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
