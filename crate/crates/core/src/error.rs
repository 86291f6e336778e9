use crate::exactlin::Field;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-range input (file contents, parameters, indices).
    #[error("invalid input: {0}")]
    Input(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("matrix is not invertible (rank {rank} of {size})")]
    NotInvertible { rank: usize, size: usize },
    /// A mathematical precondition of the operation does not hold for the
    /// supplied data (not a morphism, not filiform, not an ideal, ...).
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The library produced something contradicting its own guarantees.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
