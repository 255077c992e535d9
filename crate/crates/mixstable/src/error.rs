//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A distribution parameter lies outside its admissible domain.
    #[error("parameter out of domain for {family}: {message}")]
    ParameterDomain { family: String, message: String },

    /// Requested an empty batch (`n = 0`).
    #[error("requested an empty batch (n = 0)")]
    EmptyBatch,

    /// Matrix input is not square or not symmetric within tolerance.
    #[error("matrix shape error: {0}")]
    Shape(String),

    /// Cholesky factorization met a non-positive pivot.
    #[error("matrix is not positive definite (pivot {pivot} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    /// The requested analytic quantity has no closed form for this family.
    #[error("unsupported family for {operation}: {family}")]
    UnsupportedFamily { operation: String, family: String },

    /// Batches of incompatible dimension were combined.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A numerical scheme could not reach its accuracy target.
    #[error("accuracy failure in {context}: estimated error {estimate:.3e} exceeds target {target:.3e}")]
    Accuracy {
        context: String,
        estimate: f64,
        target: f64,
    },

    /// Identity id not present in the registry.
    #[error("unknown identity case: {0}")]
    UnknownIdentity(String),

    /// Experiment or test configuration is invalid.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn domain(family: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ParameterDomain {
            family: family.into(),
            message: message.into(),
        }
    }

    pub(crate) fn unsupported(operation: impl Into<String>, family: impl Into<String>) -> Self {
        Error::UnsupportedFamily {
            operation: operation.into(),
            family: family.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
