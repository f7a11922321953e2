use thiserror::Error;

/// Errors reported by state constructors and operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operator dimensions are unsupported or do not match.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// A state failed its construction invariants (Hermiticity, trace,
    /// positivity, Bloch norm, weight normalization, ...).
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// A scalar argument is outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation precondition was violated (non-Hermitian input to a
    /// spectral routine, mixed input where a pure state is required, ...).
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
