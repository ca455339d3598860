//! Piecewise-linear ornaments of three closed oriented `(2k−1)`-manifolds in
//! `ℝ^{3k−1}` and their μ-invariant.
//!
//! An ornament is a triple of maps `f₁, f₂, f₃` with no common image point
//! `f₁(x) = f₂(y) = f₃(z)`. The μ-invariant is the degree of
//!
//! ```text
//! X₁ × X₂ × X₃ → S^{2m−1},   (x, y, z) ↦ (2x−y−z, 2y−x−z) / ‖·‖
//! ```
//!
//! and is computed here in two independent ways: by signed preimage counting
//! of a regular ray ([`degree`]) and by signed triple-point counting along a
//! generic homotopy to the trivial ornament ([`sweep`]). All arithmetic is
//! exact over ℚ.

pub mod constructions;
pub mod degree;
pub mod error;
pub mod io;
pub mod kernel;
pub mod model;
pub mod sweep;

pub use degree::{mu_via_degree, mu_via_degree_seeded, DegreeResult, RayDirection};
pub use error::MuError;
pub use kernel::{Scalar, Vector};
pub use model::{Ornament, PLMap, TriangulatedManifold};
pub use sweep::{mu_via_sweep, HomotopyTrack, SignedTriplePoint};
