use thiserror::Error;

use crate::path_comb::Violation;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("malformed path: {0}")]
    MalformedPath(String),

    #[error("inadmissible path: {0}")]
    Inadmissible(Violation),

    #[error("inadmissible exponents: {0}")]
    InadmissibleExponents(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A comparison or evaluation asked for coefficients above a series' truncation bound.
    #[error("truncation: {0}")]
    Truncation(String),

    /// A search stopped at its length cap before it could certify a result.
    #[error("cap reached: {0}")]
    CapReached(String),

    /// An internal consistency check failed. Seeing this means a mathematical
    /// statement that the code relies on did not hold for the given input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
