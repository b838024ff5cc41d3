use thiserror::Error;

/// Every failure the library reports. Variants are grouped by the layer that raises them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(i64),
    #[error("coefficient vector has length {found}, lattice rank is {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("class #{0} is not a root (needs D^2 = -2 and D.K = 0)")]
    NotARoot(usize),
    #[error("roots #{i} and #{j} pair to {value}; only 0 or 1 is allowed")]
    BadPairing { i: usize, j: usize, value: i64 },
    #[error("component {0:?} is not an ADE Dynkin diagram")]
    NotAde(Vec<usize>),
    #[error("{count} roots exceed the bound 9 - d = {max}")]
    TooManyRoots { count: usize, max: usize },
    #[error("classes #{i} and #{j} pair negatively ({value})")]
    NegativePairing { i: usize, j: usize, value: i64 },
    #[error("point is not an A_{{9-2d}} chain: {0}")]
    NotCentralChain(String),

    #[error("generator #{0} does not preserve the intersection form")]
    NotIsometry(usize),
    #[error("generator #{0} does not fix the canonical class")]
    CanonicalNotFixed(usize),
    #[error("generator #{0} does not permute the root set")]
    RootsNotPermuted(usize),
    #[error("generator #{0} does not permute the lines on the surface")]
    LinesNotPermuted(usize),
    #[error("generator #{gen} has shape {rows}x{cols}, expected {rank}x{rank}")]
    BadMatrixShape { gen: usize, rows: usize, cols: usize, rank: usize },
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("unknown singular point id {0}")]
    UnknownPoint(String),
    #[error("point {0} is not k-rational")]
    NotRational(String),

    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("line condition failed: {0}")]
    LineCondition(String),
    #[error("no decomposition found: {0}")]
    NoDecomposition(String),

    #[error("rank-one check failed: {0}")]
    RankOne(String),
    #[error("invalid input at {path}: {message}")]
    Input { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
