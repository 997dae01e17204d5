use thiserror::Error;

/// Errors raised by constructors, parsers and exact linear algebra.
///
/// Failed mathematical checks are not errors; verifiers return them as
/// report data with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size limit exceeded: {0}")]
    Size(String),
    #[error("invalid specification: {0}")]
    Spec(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("singular operator: {0}")]
    Singular(String),
    #[error("window too small: {0}")]
    Window(String),
    #[error("k-th product extraction failed: {0}")]
    Extraction(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
