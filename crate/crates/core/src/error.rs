use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: index {index} is repeated or out of range")]
    InvalidPermutation { index: usize },

    #[error("partial map is not injective: value {value} hit twice")]
    NotInjective { value: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("degree {degree} is not the product {n} * {r}")]
    BlockShape { degree: usize, n: usize, r: usize },

    #[error("degree {degree} exceeds limit {limit} for exhaustive search")]
    DegreeTooLarge { degree: usize, limit: usize },

    #[error("degree {degree} is below the minimum {min}")]
    DegreeTooSmall { degree: usize, min: usize },

    #[error("permutation is not a single {expected}-cycle")]
    NotACycle { expected: usize },

    #[error("projection domains do not partition: index {index}")]
    DomainsDoNotPartition { index: usize },

    #[error("glued images collide at index {index}")]
    ImagesOverlap { index: usize },

    #[error("projection is empty")]
    EmptyProjection,

    #[error("projection does not commute with the image of generator {generator:?}")]
    NonCommutingProjection { generator: String },

    #[error("permutation is not an involution")]
    NotInvolution,

    #[error("lambda must lie in (0, 1], got {value}")]
    LambdaOutOfRange { value: String },

    #[error("projection trace {trace} is not below 1/2")]
    TraceTooLarge { trace: String },

    #[error("{lambda} * {n} is not an integer")]
    NotGridAligned { lambda: String, n: usize },

    #[error("invalid segment spec: {0}")]
    InvalidSegmentSpec(String),

    #[error("invalid interval data: {0}")]
    InvalidInterval(String),

    #[error("unknown generator {name:?}")]
    UnknownGenerator { name: String },

    #[error("eigensolver did not converge on matrix {matrix_hash}")]
    EigenFailed { matrix_hash: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
