use thiserror::Error;

use crate::rat::Rat;

/// Errors raised by the library.
///
/// Every variant falls into one of three families (see [`ErrorKind`]):
/// malformed input, a violated precondition, or a failed verification.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("nonzero entry at ({row}, {col}) lies outside the leading {block}x{block} block")]
    NotInBlockForm { row: usize, col: usize, block: usize },
    #[error("matrices are not adjacent (distance {0})")]
    NotAdjacent(usize),
    #[error("expected a rank-one matrix, got rank {0}")]
    RankNotOne(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix is singular")]
    Singular,
    #[error("lift requires a square root of {value}, which is not a rational square")]
    NonRationalLift { value: Rat },
    #[error("column {column} requires a square root of {value}, which is not a rational square")]
    NonRationalColumn { column: usize, value: Rat },
    #[error("no sign assignment matches the cross term for columns {first} and {second}")]
    CrossTermMismatch { first: usize, second: usize },
    #[error("no probe pair has image distance 2")]
    NoRank2Witness,
    #[error("functional table has no entry for the requested input")]
    MissingTableEntry,
    #[error("gave up after {0} attempts")]
    RetryExhausted(usize),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Coarse classification used to pick a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Malformed,
    Precondition,
    Verification,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } | Error::NotSymmetric { .. } => ErrorKind::Malformed,
            Error::DimensionMismatch(_)
            | Error::NotInBlockForm { .. }
            | Error::NotAdjacent(_)
            | Error::RankNotOne(_)
            | Error::Precondition(_)
            | Error::Singular
            | Error::MissingTableEntry => ErrorKind::Precondition,
            Error::NonRationalLift { .. }
            | Error::NonRationalColumn { .. }
            | Error::CrossTermMismatch { .. }
            | Error::NoRank2Witness
            | Error::RetryExhausted(_)
            | Error::Verification(_) => ErrorKind::Verification,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(what: &str, left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{what}: {left} vs {right}")))
    }
}
