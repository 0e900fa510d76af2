use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch between {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("data length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("QR requires rows >= cols, got {rows}x{cols}")]
    Underdetermined { rows: usize, cols: usize },

    #[error("column {column} is numerically dependent on the preceding columns")]
    RankDeficient { column: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("matrix is not upper triangular (entry ({row}, {col}) = {value:e})")]
    NotUpperTriangular { row: usize, col: usize, value: f64 },

    #[error("unknown code '{name}'; valid builtin codes: {valid}")]
    UnknownCode { name: String, valid: String },

    #[error("invalid code: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("exhaustive search limited to K <= {max_k}, code has K = {k}; use optimize instead")]
    TooLarge { k: usize, max_k: usize },

    #[error("2*nr*nt = {rows} rows cannot support K = {k} columns; increase nr")]
    InsufficientReceive { rows: usize, k: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
