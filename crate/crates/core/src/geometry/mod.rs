//! Exact rational linear algebra and convex geometry in dimension ≤ 3.

mod hull;
mod lattice;
mod linalg;

pub use hull::{convex_hull, six_volume, Facet, RationalPolytope};
pub use lattice::{
    hermite_rows, intersection_lattice, normalized_cone_volume, primitive_functional, Subspace,
};
pub use linalg::{
    combination, det, int, nullspace, primitive_integer, rank, rank3, ratio, to_i64, IVec3,
    Matrix3Q, Rational, Vec3Q,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,
    #[error("the affine hull of the face passes through the origin")]
    FaceThroughOrigin,
    #[error("face of dimension {face} does not fit a subspace of rank {subspace}")]
    DimensionMismatch { face: usize, subspace: usize },
    #[error("face is not contained in the subspace")]
    NotInSubspace,
    #[error("supporting functional takes the non-integral value {0} on the face")]
    NonIntegralLevel(String),
    #[error("integer overflow")]
    Overflow,
}

impl GeometryError {
    /// Variant name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            GeometryError::OriginNotInterior => "OriginNotInterior",
            GeometryError::FaceThroughOrigin => "FaceThroughOrigin",
            GeometryError::DimensionMismatch { .. } => "DimensionMismatch",
            GeometryError::NotInSubspace => "NotInSubspace",
            GeometryError::NonIntegralLevel(_) => "NonIntegralLevel",
            GeometryError::Overflow => "Overflow",
        }
    }
}
