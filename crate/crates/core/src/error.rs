use thiserror::Error;

/// Errors raised by library operations.
///
/// Violated algebraic identities found by the `validate` family are returned
/// as data, not through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar `{text}`: {reason}")]
    ScalarParse { text: String, reason: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("map is not a bimodule morphism: {0}")]
    NotBimoduleMap(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded at degree {degree}: {needed} scalars requested, cap is {cap}")]
    Budget { degree: usize, needed: u128, cap: u64 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("{0}")]
    Format(String),
    #[error("{file}:{line}:{column}: field `{field}`: {message}")]
    Parse { file: String, line: usize, column: usize, field: String, message: String },
    #[error("{file}: field `{field}`: {message}")]
    Input { file: String, field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
