use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular matrix")]
    Singular,
    #[error("precision must be at least 1")]
    BadPrecision,
    #[error("coordinates are not integral")]
    NonIntegral,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("vector is isotropic")]
    Isotropic,
    #[error("expected a vector of norm {expected}, got norm {found}")]
    WrongNorm { expected: String, found: String },
    #[error("candidate set is not a group: {0}")]
    NotAGroup(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("elimination failed: {0}")]
    Elimination(String),
}

pub type Result<T> = std::result::Result<T, Error>;
