use thiserror::Error;

/// Errors surfaced by fallible constructors and estimator entry points.
///
/// Hot-path math (scores, log-densities, sampling) is infallible once its
/// inputs have passed construction-time validation, so only the boundaries
/// of the crate return this type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input that must be a finite real was NaN or infinite.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    /// A value violated a construction-time invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two containers that must share a shape did not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An action fell outside the bounds it is constrained to.
    #[error("action outside bounds: {0}")]
    OutOfBounds(String),
}

pub type Result<T> = std::result::Result<T, Error>;
