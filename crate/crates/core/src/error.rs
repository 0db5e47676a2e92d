//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Amplitude pair that is not normalized (or not finite).
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// Vector that cannot be interpreted as a point on the unit sphere.
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    /// Out-of-range or degenerate numeric parameter.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Expectation value outside [-1, 1].
    #[error("invalid expectation: {0}")]
    InvalidExpectation(String),
    /// Coincidence experiment with mismatched or duplicated sides.
    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),
    /// Band entity reused after a pull already consumed it.
    #[error("consumed entity: {0}")]
    ConsumedEntity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
