use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("graph is disconnected: Laplacian has {zeros} zero invariant factors")]
    Disconnected { zeros: usize },

    #[error("relations matrix has {zeros} zero invariant factors, expected exactly one")]
    UnexpectedRank { zeros: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("inexact division {num} / {den}")]
    InexactDivision { num: BigInt, den: BigInt },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
