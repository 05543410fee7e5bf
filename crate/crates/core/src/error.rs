use thiserror::Error;

/// Errors raised by the structured and dense routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value at {0}")]
    NonFinite(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("size must be at least 1 (got {0})")]
    EmptySize(&'static str),
    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("unknown generator kind `{0}`")]
    UnknownKind(String),
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
    #[error("operand is not block Toeplitz: {0}")]
    NotToeplitz(String),
    #[error("blocks are not diagonal: {0}")]
    NotDiagonal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn mismatch(msg: impl Into<String>) -> Error {
    Error::DimensionMismatch(msg.into())
}
