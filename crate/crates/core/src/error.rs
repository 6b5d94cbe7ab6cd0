use thiserror::Error;

/// Errors raised by the trade-off toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{quantity} out of domain: {value} ({constraint})")]
    Domain {
        quantity: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("target rate {target} is not achievable (largest attainable is {max_attainable})")]
    Infeasible { target: f64, max_attainable: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not positive semidefinite: smallest eigenvalue {0}")]
    NotPositive(f64),

    #[error("Kraus operators are not trace preserving (deviation {0:e})")]
    Incomplete(f64),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("cannot combine frontiers: {0}")]
    IncompatibleFrontiers(String),

    #[error("root finding failed: {0}")]
    NoConvergence(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(quantity: &'static str, value: f64, constraint: &'static str) -> Error {
    Error::Domain {
        quantity,
        value,
        constraint,
    }
}
