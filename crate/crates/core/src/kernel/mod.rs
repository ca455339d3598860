//! Exact rational linear algebra and geometric predicates.
//!
//! No floating point is used anywhere: degeneracies are detected exactly as
//! vanishing determinants or zero barycentric coordinates.

mod barycentric;
mod feasibility;
mod intersect;
mod matrix;
mod perturb;
pub mod scalar;
mod vector;

use thiserror::Error;

pub use barycentric::{
    barycentric_position, classify_scaled, complete, complete_from_first, BarycentricPosition,
};
pub use feasibility::{Constraint, LinearSystem};
pub use intersect::{common_point, BoundingBox};
pub use matrix::{
    det_sign, is_consistent, rank, solve_affine, solve_square, solve_square_scaled, LinearSolve,
    Matrix, ScaledSolution,
};
pub use perturb::{
    derive_seed, random_rational_perturbation, random_rational_perturbation_with, rng_for,
    unit_offset, DEFAULT_DENOMINATOR_BOUND,
};
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use vector::Vector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("barycentric coordinates sum to {0}, not 1")]
    BarycentricSum(Scalar),
    #[error("perturbation radius must be positive, got {0}")]
    NonPositiveEps(Scalar),
    #[error("malformed rational literal {0:?}")]
    ParseScalar(String),
}
