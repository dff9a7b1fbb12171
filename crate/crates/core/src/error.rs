use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order k = {0}: k must be at least 2")]
    InvalidOrder(usize),

    #[error("inverted index range: {lo} > {hi}")]
    InvertedRange { lo: i64, hi: i64 },

    #[error("invalid level r = {0}: r must be at least 1")]
    InvalidLevel(u32),

    #[error("index {index} out of range: {reason}")]
    IndexOutOfRange { index: i64, reason: &'static str },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix dimension must be positive")]
    EmptyMatrix,

    #[error("ragged matrix: row {row} has {len} entries, expected {dim}")]
    RaggedRows { row: usize, len: usize, dim: usize },

    #[error("block grid is not uniform: {0}")]
    NonUniformBlocks(String),

    #[error("dimension {dim} is not divisible by grid side {k}")]
    IndivisibleDimension { dim: usize, k: usize },

    #[error("Lucas matrices are only defined for k = 2, got k = {0}")]
    LucasOrder(usize),

    #[error("unknown checker id `{0}`")]
    UnknownChecker(String),

    #[error("malformed matrix document: {0}")]
    MalformedMatrix(String),

    #[error("benchmark needs j_max >= step >= 1, got j_max = {j_max}, step = {step}")]
    InvalidStep { j_max: i64, step: i64 },

    #[error("iterative and Q-power values differ at j = {j}")]
    BenchMismatch { j: i64 },
}
