use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed PD code: {0}")]
    MalformedPd(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("automorphism is not invertible: {0}")]
    NotInvertible(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("group order {0} exceeds the catalog limit of 64")]
    OrderTooLarge(usize),

    #[error("excluded manifold: {0}")]
    ExcludedManifold(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unavailable over Z: {0}")]
    UnavailableOverZ(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
