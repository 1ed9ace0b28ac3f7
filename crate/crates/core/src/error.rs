use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("dimension chain is not monotone: {0:?}")]
    NonMonotoneChain(Vec<usize>),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid ordered pseudo-partition: {0}")]
    InvalidOpp(String),
    #[error("faces belong to different polytopes: (n, k) = {left:?} vs {right:?}")]
    ContextMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("series caps differ: {0:?} vs {1:?}")]
    CapMismatch((usize, usize, usize), (usize, usize, usize)),
    #[error("series has a nonzero constant term")]
    NonzeroConstant,
    #[error("inexact series division: {0}")]
    InexactDivision(String),
    #[error("series caps too small: {0}")]
    CapsTooSmall(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
