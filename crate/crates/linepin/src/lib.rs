//! Exact decision procedures around a reference line in 3-space.
//!
//! A line in space is given by the two points where it crosses the planes
//! z = 0 and z = 1, packed into four rational coordinates. The z-axis is the
//! origin of that coordinate chart. An oriented line g that meets the z-axis
//! induces a sidedness constraint on nearby lines; this crate decides, with
//! arbitrary-precision rational arithmetic throughout, whether a family of
//! such constraints (or of convex polytopes tangent to the axis) leaves the
//! axis isolated among the lines satisfying all of them, produces checkable
//! escape certificates when it does not, reduces families to irreducible
//! subfamilies, and classifies the minimal configurations that can occur.

pub mod classify;
pub mod cone;
pub mod doc;
pub mod generators;
pub mod linalg;
pub mod linespace;
pub mod lp;
pub mod oracle;
pub mod pinning;
pub mod polytopes;
pub mod rat;

use thiserror::Error;

/// Crate-wide error type. Variants map CLI exit code 3 (precondition
/// violations) except the parse variants, which map exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("direction must not be vertical: (dx, dy) = (0, 0)")]
    DegenerateDirection,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("halfspace does not contain the required subspace")]
    NotContaining,
    #[error("family must not be empty")]
    EmptyFamily,
    #[error("operation requires between {min} and {max} elements, got {got}")]
    WrongArity { min: usize, max: usize, got: usize },
    #[error("family does not pin the axis")]
    NotAPinning,
    #[error("point set does not surround the origin")]
    NotSurrounding,
    #[error("cone is not a flat (it has extreme rays)")]
    NotAFlat,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("origin is not in the convex hull of the points")]
    NotContainingOrigin,
    #[error("point set does not minimally surround the origin")]
    NotMinimallySurrounding,
    #[error("constraint is not horizontal (dz must be 0)")]
    NotOrthogonal,
    #[error("family is not a minimal pinning of horizontal constraints")]
    NotAMinimalOrthoPinning,
    #[error("polytope does not touch the axis in a point contact")]
    NotTangent,
    #[error("polytope touches the axis along a facet whose plane contains it")]
    CoplanarFacetExcluded,
    #[error("unsupported generator label: {0}")]
    UnsupportedLabel(String),
    #[error("genericity check failed: {0}")]
    GenericityFailure(&'static str),
    #[error("two of the first three lines are coplanar or concurrent")]
    DegenerateTriple,
    #[error("the axis misses a member polytope, so it is not a common transversal")]
    NotATransversal,
    #[error("coplanar-facet member is not in the supported wedge shape: {0}")]
    UnsupportedWedgeConfiguration(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
