use thiserror::Error;

/// Errors surfaced by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("simple reflection index {index} out of range for S_{n}")]
    InvalidIndex { index: usize, n: usize },
    #[error("{v} is not covered by {w} in Bruhat order")]
    NotACover { v: String, w: String },
    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),
    #[error("result is not integral: {0}")]
    NonIntegral(String),
    #[error("index {index} exceeds working precision {precision}")]
    PrecisionExceeded { index: usize, precision: usize },
    #[error("bubbles have even degree, got {0}")]
    OddDegree(i64),
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("subexpressions do not share start and terminus")]
    NotCoterminal,
    #[error("subexpressions of different expressions")]
    MismatchedExpressions,
    #[error("window {window} too small for bound {bound}")]
    WindowTooSmall { window: i64, bound: i64 },
    #[error("core is not closed under {0}")]
    CoreNotClosed(String),
    #[error("invalid module data: {0}")]
    InvalidModule(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
