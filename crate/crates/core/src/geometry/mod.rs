//! Exact rational convex geometry: H-polytopes, vertices, face lattices,
//! Delzant (unimodular) validation and lattice points.

mod delzant;
mod face;
mod halfspace;
mod lattice;
mod polytope;

pub use delzant::{is_delzant, DelzantPolytope, DelzantReport, VertexCone};
pub use face::{Face, FaceLattice};
pub use halfspace::Halfspace;
pub(crate) use polytope::{affine_dimension, unimodular_inverse_transpose};
pub use polytope::{vertices_of, Polytope};

use thiserror::Error;

use crate::rational::{format_vector, RationalVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("halfspace normal must be nonzero")]
    ZeroNormal,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no halfspaces given")]
    NoHalfspaces,
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("feasible set has empty interior (affine dimension {affine_dim} < {dim})")]
    EmptyInterior { dim: usize, affine_dim: usize },
    #[error("halfspace {index} does not support a facet")]
    RedundantHalfspace { index: usize },
    #[error("vertex {} lies on {facets} facets (not simple)", format_vector(.vertex))]
    NotSimple { vertex: RationalVector, facets: usize },
    #[error("polytope is not Delzant: vertex {} has cone determinant {determinant}", format_vector(.vertex))]
    NotDelzant { vertex: RationalVector, determinant: String },
    #[error("{} is not a vertex of the polytope", format_vector(.0))]
    UnknownVertex(RationalVector),
    #[error("matrix is not unimodular")]
    NotUnimodular,
}
