use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("vertex {vertex} out of range for a quiver on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("pair ({0}, {1}) given more than once")]
    DuplicatePair(usize, usize),
    #[error("arrow {tail} -> {head} has non-positive weight {weight}")]
    NonPositiveWeight { tail: usize, head: usize, weight: i32 },
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("{0} vertices exceeds the supported maximum")]
    TooManyVertices(usize),
    #[error("not a permutation of the vertex set")]
    BadPermutation,
    #[error("arrow weight overflow during mutation")]
    WeightOverflow,
    #[error("invalid canonical key")]
    BadKey,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{family} is not defined on {n} vertices")]
    InvalidSeed { family: String, n: usize },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}
