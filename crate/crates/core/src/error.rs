use thiserror::Error;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("undefined input: {0}")]
    UndefinedInput(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not invertible: determinant {0} is not a unit")]
    NotInvertible(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("representation error: {0}")]
    Representation(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("closure violation: {0}")]
    Closure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
