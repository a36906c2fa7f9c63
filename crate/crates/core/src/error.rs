use thiserror::Error;

use crate::quiver::{ArrowId, FaceId, VertexId};

/// Input that cannot even be interpreted as a quiver on the torus.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructuralError {
    #[error("arrow ids must be dense 0..{expected}; found id {found} at position {position}")]
    ArrowIdOutOfOrder {
        position: usize,
        expected: usize,
        found: ArrowId,
    },
    #[error("arrow {arrow} references vertex {vertex}, but the quiver has {vertices} vertices")]
    VertexOutOfRange {
        arrow: ArrowId,
        vertex: VertexId,
        vertices: usize,
    },
    #[error("face {face} references arrow {arrow}, but the quiver has {arrows} arrows")]
    ArrowOutOfRange {
        face: FaceId,
        arrow: ArrowId,
        arrows: usize,
    },
    #[error("face {face} is empty")]
    EmptyFace { face: FaceId },
    #[error("malformed quiver JSON: {0}")]
    Json(String),
}

/// Precondition violations of individual operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("vertex {vertex} does not lie on face {face}")]
    VertexNotOnFace { vertex: VertexId, face: FaceId },
    #[error("vertex {0} lies on no face")]
    VertexOnNoFace(VertexId),
    #[error("vertex {vertex} out of range (quiver has {vertices})")]
    NoSuchVertex { vertex: VertexId, vertices: usize },
    #[error("face {0} out of range")]
    NoSuchFace(FaceId),
    #[error("arrow {0} out of range")]
    NoSuchArrow(ArrowId),
    #[error(
        "path is not composable at step {step}: arrow {arrow} has tail {tail}, expected {expected}"
    )]
    NotComposable {
        step: usize,
        arrow: ArrowId,
        tail: VertexId,
        expected: VertexId,
    },
    #[error("arrow set is not a perfect matching: face {face} contains {count} of its arrows")]
    NotPerfect { face: FaceId, count: usize },
    #[error("monomial has {found} exponents, catalog has {expected} variables")]
    CatalogMismatch { expected: usize, found: usize },
    #[error("degree bound {bound} is below the monomial degree {degree}")]
    DegreeBoundTooSmall { bound: u32, degree: u32 },
    #[error("sigma does not divide the monomial (exponent of variable {0} is zero)")]
    SigmaDoesNotDivide(usize),
    #[error("quiver has no faces")]
    EmptyQuiver,
    #[error("{0}")]
    Other(String),
}

/// A search ran into one of its configured limits.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResourceError {
    #[error("perfect matching enumeration exceeded the cap of {cap}")]
    MatchingCap { cap: usize },
    #[error("state budget of {max_states} exhausted during {during}")]
    StateBudget { max_states: usize, during: String },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
}

/// Reasons a contraction cannot be formed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContractionError {
    #[error("contracted arrows contain a cycle in the underlying graph (closed by arrow {0})")]
    CyclicArrowSet(ArrowId),
    #[error("contracting would shrink face {face} to length {length}")]
    FaceCollapse { face: FaceId, length: usize },
    #[error("arrow {0} is not an arrow of the source quiver")]
    UnknownArrow(ArrowId),
    #[error("contracted quiver fails validation: {0}")]
    InvalidTarget(String),
    #[error("no bigon to reduce")]
    NoBigon,
    #[error("bigon on face {face} cannot be merged: {reason}")]
    BigonMerge { face: FaceId, reason: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error("quiver is not a valid dimer quiver: {0}")]
    Invalid(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
