use thiserror::Error;

use crate::ring::ValidationReport;

/// Errors raised by ring constructions and the algorithms built on them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    Capacity {
        what: String,
        needed: u128,
        cap: u128,
    },

    #[error("ring axioms violated:\n{0}")]
    Validation(ValidationReport),

    #[error("not an ideal: {0}")]
    InvalidIdeal(String),

    #[error("not a central idempotent: {0}")]
    InvalidIdempotent(String),

    #[error("map is not unital: image of one is {0}")]
    NotUnital(u16),

    #[error("map is not a ring homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("endomorphism cannot be lifted: {0}")]
    InvalidLift(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("malformed witness: {0}")]
    MalformedWitness(String),

    #[error("reproduction failed: {0}")]
    Reproduction(String),

    #[error("unknown identifier: {0}")]
    UnknownId(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
