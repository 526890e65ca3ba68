use thiserror::Error;

use crate::quiver::Vertex;

/// Errors raised by quiver construction, mutation, and the cycle builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("vertex {0} is frozen")]
    FrozenVertex(Vertex),
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(Vertex),
    #[error("vertex label 0 is not allowed (labels are positive integers)")]
    ZeroLabel,
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("arrows listed in both directions between {0} and {1}")]
    TwoCycle(Vertex, Vertex),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(Vertex, Vertex),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("quiver already carries frozen vertices")]
    AlreadyFramed,
    #[error("quiver carries no frozen vertices")]
    NotFramed,
    #[error("row of vertex {0} is not sign-coherent")]
    SignCoherenceViolation(Vertex),
    #[error("row of vertex {0} has no frozen arrows")]
    ZeroRow(Vertex),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("not a reddening sequence: {0}")]
    NotReddening(String),
    #[error("associated permutation of {0} is {1}, expected the identity")]
    NonIdentityPermutation(&'static str, String),
    #[error("label sets overlap at {0}")]
    LabelCollision(Vertex),
    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: Vertex, col: Vertex, value: i64 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("starting quiver is a fork")]
    ForkStart,
    #[error("unknown catalog item {0:?}")]
    UnknownName(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
