use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("gluing of tetrahedron {tet} face {face} is not mirrored by its partner")]
    InvolutionViolation { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} is not glued")]
    NotClosed { tet: usize, face: usize },
    #[error("face-adjacency graph of the tetrahedra is disconnected")]
    Disconnected,
    #[error("triangulation must contain at least one tetrahedron")]
    Empty,
    #[error("gluing entry out of range: {0}")]
    OutOfRange(String),
    #[error("no canonical 3-sphere of size {0} (only 1 or 2)")]
    UnsupportedSize(usize),
    #[error("triangulation is not a closed 3-manifold")]
    NotAManifold,
    #[error("malformed signature: {0}")]
    MalformedSignature(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("census size {size} exceeds the ceiling {ceiling}")]
    SizeAboveCeiling { size: usize, ceiling: usize },
    #[error("level {0} has no nodes")]
    EmptyLevel(usize),
    #[error("analysis did not reach a conclusion within its guard")]
    Inconclusive,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
