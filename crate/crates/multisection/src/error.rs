//! Error type shared across the library.

use thiserror::Error;

/// All failure modes of the library surface.
#[derive(Debug, Error)]
pub enum Error {
    /// Model parameters violate their invariants (e.g. derived p > 1).
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    /// A partition does not describe the graph it was paired with.
    #[error("partition does not match graph: {0}")]
    MismatchedPartition(String),

    /// Matrix or block dimensions are inconsistent.
    #[error("bad dimensions: {0}")]
    BadDimensions(String),

    /// An iterative numerical kernel exceeded its iteration cap.
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    /// An adversary action list violates monotonicity or edge state.
    /// `index` is the position of the offending action in the list.
    #[error("invalid action at index {index}: {reason}")]
    InvalidAction { index: usize, reason: String },

    /// Rounding a solver matrix did not yield k equal components.
    /// Carries the observed component sizes for diagnostics.
    #[error("rounding failed: component sizes {sizes:?}")]
    RoundingFailure { sizes: Vec<usize> },

    /// An input lies outside the mathematical domain of a bound function.
    #[error("domain error: {0}")]
    DomainError(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
