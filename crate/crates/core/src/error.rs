use thiserror::Error;

/// Errors raised by morphism validation, the generic algorithms and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("cannot compose: {0}")]
    Composition(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// The intertwining hypothesis `u f = g u` of a functoriality call fails.
    #[error("not an intertwiner: {0}")]
    NotIntertwining(String),

    /// An instance hook broke its contract (for example a factorization whose
    /// parts do not recompose to the input).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("guard exceeded: {what} (limit {limit})")]
    GuardExceeded { what: String, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
