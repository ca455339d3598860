//! μ as the degree of `F: X₁ × X₂ × X₃ → S^{2m−1}`.
//!
//! A regular value of `F` is represented by a rational ray `ℝ₊·v ⊂ ℝ^{2m}`
//! rather than a unit vector; preimages of the ray under the unnormalized map
//! `G(x, y, z) = (2x−y−z, 2y−x−z)` are exactly the preimages of `v/‖v‖` under
//! `F = G/‖G‖`. The product cells `σ₁ × σ₂ × σ₃` are not triangulated: `G`
//! is affine in the joint barycentric parameters, so each facet triple is one
//! square solve in `2m` unknowns (the `2m − 1` parameters and the ray scalar).

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::MuError;
use crate::kernel::{
    classify_scaled, complete, derive_seed, is_consistent, rng_for, solve_square_scaled,
    unit_offset, BarycentricPosition, BoundingBox, KernelError, LinearSystem, Matrix, Scalar,
    Vector, DEFAULT_DENOMINATOR_BOUND,
};
use crate::model::{Ornament, PLMap};

/// Orientation constant relating the determinant of the solve matrix
/// `[∂G/∂λ(σ₁) | ∂G/∂λ(σ₂) | ∂G/∂λ(σ₃) | −v]` to the local degree of `F`,
/// with `S^{2m−1}` oriented by its inward co-orientation and `X₁ × X₂ × X₃`
/// by the product orientation. Calibrated once on the `k = 1` Borromean
/// ornament; the value does not depend on `k`.
pub const DEGREE_SIGN: i8 = -1;

/// Upper bound on fresh directions tried by [`mu_via_degree_seeded`].
pub const MAX_DIRECTION_ATTEMPTS: u64 = 32;

/// A nonzero rational direction in `ℝ^{2m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayDirection {
    v: Vector,
    seed: Option<u64>,
}

impl RayDirection {
    pub fn new(v: Vector) -> Option<Self> {
        (!v.is_zero()).then_some(RayDirection { v, seed: None })
    }

    /// Entries `n / 2^16` with `|n| < 2^16`, drawn from `seed`.
    pub fn seeded(dim: usize, seed: u64) -> Self {
        let mut rng = rng_for(seed);
        loop {
            let v: Vector = (0..dim)
                .map(|_| unit_offset(&mut rng, DEFAULT_DENOMINATOR_BOUND))
                .collect::<Vec<_>>()
                .into();
            if !v.is_zero() {
                return RayDirection {
                    v,
                    seed: Some(seed),
                };
            }
        }
    }

    pub fn vector(&self) -> &Vector {
        &self.v
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

/// An isolated transverse preimage of the ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageSolution {
    pub facets: [usize; 3],
    /// Full barycentric coordinates (all strictly positive) per facet.
    pub barycentric: [Vec<Scalar>; 3],
    /// `G(x, y, z) = s·v` with `s > 0`.
    pub s: Scalar,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResult {
    pub mu: i64,
    pub solutions: Vec<PreimageSolution>,
    pub ray: RayDirection,
}

/// `(2x − y − z, 2y − x − z)`. Vanishes exactly on the diagonal `x = y = z`.
pub fn unnormalized_sphere_map(x: &Vector, y: &Vector, z: &Vector) -> Result<Vector, KernelError> {
    let first = x.scale(&Scalar::from_integer(2.into())).sub(y)?.sub(z)?;
    let second = y.scale(&Scalar::from_integer(2.into())).sub(x)?.sub(z)?;
    Ok(first.concat(&second))
}

/// Checks `dim X₁ + dim X₂ + dim X₃ = 2m − 1`, i.e. `3(2k−1) = 2(3k−1) − 1`.
pub fn check_dimensions(o: &Ornament) -> Result<(), MuError> {
    let dims = o.domain_dims();
    let m = o.ambient_dim();
    if dims.iter().sum::<usize>() + 1 != 2 * m {
        return Err(MuError::DimensionMismatch {
            domain_dims: dims,
            ambient: m,
        });
    }
    Ok(())
}

/// Facet data in the parameterization `x = Σ λⱼ pⱼ`, `λ_{d+1} = 1 − Σ_{j≤d} λⱼ`:
/// base point `p_{d+1}` and tangent columns `pⱼ − p_{d+1}`.
struct FacetFrame {
    base: Vector,
    edges: Vec<Vector>,
    bbox: BoundingBox,
}

fn frames(c: &PLMap) -> Vec<FacetFrame> {
    (0..c.domain().facets().len())
        .map(|f| {
            let pts = c.facet_images(f);
            let (last, rest) = pts.split_last().expect("facet has vertices");
            FacetFrame {
                base: (*last).clone(),
                edges: rest
                    .iter()
                    .map(|p| p.sub(last).expect("equal ambient dims"))
                    .collect(),
                bbox: BoundingBox::of(pts.iter().copied()),
            }
        })
        .collect()
}

/// Interval enclosure of `Σ wᵢ·boxᵢ` for integer weights.
fn weighted_box(parts: &[(i64, &BoundingBox)]) -> (Vec<Scalar>, Vec<Scalar>) {
    let n = parts[0].1.lo.len();
    let mut lo = vec![Scalar::zero(); n];
    let mut hi = vec![Scalar::zero(); n];
    for &(w, b) in parts {
        let w = Scalar::from_integer(w.into());
        for i in 0..n {
            let (a, c) = (&b.lo[i] * &w, &b.hi[i] * &w);
            if w.is_negative() {
                lo[i] += c;
                hi[i] += a;
            } else {
                lo[i] += a;
                hi[i] += c;
            }
        }
    }
    (lo, hi)
}

/// Whether the closed ray `{s·v : s ≥ 0}` meets the box `[lo, hi]`.
fn ray_meets_box(v: &Vector, lo: &[Scalar], hi: &[Scalar]) -> bool {
    let mut s_lo = Scalar::zero();
    let mut s_hi: Option<Scalar> = None;
    for i in 0..lo.len() {
        let vi = &v[i];
        if vi.is_zero() {
            if lo[i].is_positive() || hi[i].is_negative() {
                return false;
            }
            continue;
        }
        let (a, b) = (&lo[i] / vi, &hi[i] / vi);
        let (a, b) = if vi.is_negative() { (b, a) } else { (a, b) };
        if a > s_lo {
            s_lo = a;
        }
        if s_hi.as_ref().is_none_or(|h| b < *h) {
            s_hi = Some(b);
        }
    }
    s_hi.is_none_or(|h| s_lo <= h)
}

enum TripleOutcome {
    Miss,
    Hit(PreimageSolution),
    Degenerate,
}

fn solve_triple(
    o: &Ornament,
    facets: [usize; 3],
    frames: [&FacetFrame; 3],
    v: &Vector,
) -> Result<TripleOutcome, KernelError> {
    let m = v.dim() / 2;
    // Column blocks: x contributes (2e, −e), y (−e, 2e), z (−e, −e).
    let weights: [(i64, i64); 3] = [(2, -1), (-1, 2), (-1, -1)];
    let mut columns: Vec<Vector> = Vec::with_capacity(2 * m);
    for (frame, &(w1, w2)) in frames.iter().zip(&weights) {
        for e in &frame.edges {
            let a = e.scale(&Scalar::from_integer(w1.into()));
            let b = e.scale(&Scalar::from_integer(w2.into()));
            columns.push(a.concat(&b));
        }
    }
    columns.push(v.scale(&Scalar::from_integer((-1).into())));
    let a = Matrix::from_columns(&columns)?;
    let g0 = unnormalized_sphere_map(&frames[0].base, &frames[1].base, &frames[2].base)?;
    let rhs = g0.scale(&Scalar::from_integer((-1).into()));
    match solve_square_scaled(&a, &rhs)? {
        Some(sol) => {
            let n = sol.numerators.len();
            let mut on_boundary = false;
            let mut offset = 0;
            let mut splits = [(0, 0); 3];
            for (i, frame) in frames.iter().enumerate() {
                let d = frame.edges.len();
                splits[i] = (offset, offset + d);
                match classify_scaled(&sol.numerators[offset..offset + d], &sol.denominator) {
                    BarycentricPosition::Outside => return Ok(TripleOutcome::Miss),
                    BarycentricPosition::Boundary => on_boundary = true,
                    BarycentricPosition::Interior => {}
                }
                offset += d;
            }
            let s_num = &sol.numerators[n - 1];
            if s_num.is_negative() {
                return Ok(TripleOutcome::Miss);
            }
            if on_boundary || s_num.is_zero() {
                return Ok(TripleOutcome::Degenerate);
            }
            let x = sol.to_vector().into_coords();
            Ok(TripleOutcome::Hit(PreimageSolution {
                facets,
                barycentric: std::array::from_fn(|i| complete(&x[splits[i].0..splits[i].1])),
                s: x[n - 1].clone(),
                sign: DEGREE_SIGN * sol.det_sign,
            }))
        }
        None if !is_consistent(&a, &rhs)? => Ok(TripleOutcome::Miss),
        None => {
            if closed_ray_preimage_exists(o, facets, v) {
                Ok(TripleOutcome::Degenerate)
            } else {
                Ok(TripleOutcome::Miss)
            }
        }
    }
}

/// Exact test for a point of the closed product cell mapping into the closed
/// ray, used when the solve matrix is singular.
fn closed_ray_preimage_exists(o: &Ornament, facets: [usize; 3], v: &Vector) -> bool {
    let m = o.ambient_dim();
    let pts: Vec<Vec<&Vector>> = (0..3)
        .map(|i| o.component(i).facet_images(facets[i]))
        .collect();
    let sizes: Vec<usize> = pts.iter().map(Vec::len).collect();
    let vars = sizes.iter().sum::<usize>() + 1;
    let s_var = vars - 1;
    let mut sys = LinearSystem::new(vars);
    let mut offset = 0;
    for &n in &sizes {
        let mut row = vec![Scalar::zero(); vars];
        for j in 0..n {
            row[offset + j] = Scalar::from_integer(1.into());
            sys.nonnegative(offset + j);
        }
        sys.equal(row, Scalar::from_integer(1.into()));
        offset += n;
    }
    sys.nonnegative(s_var);
    let weights: [(i64, i64); 3] = [(2, -1), (-1, 2), (-1, -1)];
    for half in 0..2 {
        for c in 0..m {
            let mut row = vec![Scalar::zero(); vars];
            let mut offset = 0;
            for (i, comp) in pts.iter().enumerate() {
                let w = if half == 0 {
                    weights[i].0
                } else {
                    weights[i].1
                };
                for (j, p) in comp.iter().enumerate() {
                    row[offset + j] = &p[c] * Scalar::from_integer(w.into());
                }
                offset += comp.len();
            }
            row[s_var] = -v[half * m + c].clone();
            sys.equal(row, Scalar::zero());
        }
    }
    sys.is_feasible()
}

/// Signed count of the transverse preimages of the ray `ℝ₊·v`.
///
/// Fails with [`MuError::NonGenericDirection`] if `v` is not a regular value
/// in the exact sense: some facet triple has a preimage on a cell boundary,
/// or a singular system whose closed cell meets the ray. Callers resolve this
/// by retrying with a fresh direction, see [`mu_via_degree_seeded`].
pub fn mu_via_degree(o: &Ornament, ray: &RayDirection) -> Result<DegreeResult, MuError> {
    check_dimensions(o)?;
    let m = o.ambient_dim();
    let v = ray.vector();
    if v.dim() != 2 * m {
        return Err(KernelError::DimensionMismatch {
            expected: 2 * m,
            found: v.dim(),
        }
        .into());
    }
    let fr: Vec<Vec<FacetFrame>> = o.components().iter().map(frames).collect();
    let (n1, n2, n3) = (fr[0].len(), fr[1].len(), fr[2].len());
    let outcomes: Vec<Result<Vec<PreimageSolution>, MuError>> = (0..n1)
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            for j in 0..n2 {
                for l in 0..n3 {
                    let (a, b, c) = (&fr[0][i], &fr[1][j], &fr[2][l]);
                    let (lo1, hi1) = weighted_box(&[(2, &a.bbox), (-1, &b.bbox), (-1, &c.bbox)]);
                    let (lo2, hi2) = weighted_box(&[(-1, &a.bbox), (2, &b.bbox), (-1, &c.bbox)]);
                    let lo: Vec<Scalar> = lo1.into_iter().chain(lo2).collect();
                    let hi: Vec<Scalar> = hi1.into_iter().chain(hi2).collect();
                    if !ray_meets_box(v, &lo, &hi) {
                        continue;
                    }
                    match solve_triple(o, [i, j, l], [a, b, c], v)? {
                        TripleOutcome::Miss => {}
                        TripleOutcome::Hit(sol) => found.push(sol),
                        TripleOutcome::Degenerate => {
                            return Err(MuError::NonGenericDirection { facets: [i, j, l] })
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect();
    let mut solutions = Vec::new();
    for r in outcomes {
        solutions.extend(r?);
    }
    let mu = solutions.iter().map(|s| i64::from(s.sign)).sum();
    Ok(DegreeResult {
        mu,
        solutions,
        ray: ray.clone(),
    })
}

/// [`mu_via_degree`] with seeded directions, retrying on non-generic ones.
pub fn mu_via_degree_seeded(o: &Ornament, seed: u64) -> Result<DegreeResult, MuError> {
    let dim = 2 * o.ambient_dim();
    for attempt in 0..MAX_DIRECTION_ATTEMPTS {
        let ray = RayDirection::seeded(dim, derive_seed(seed, attempt));
        match mu_via_degree(o, &ray) {
            Err(MuError::NonGenericDirection { .. }) => continue,
            other => return other,
        }
    }
    Err(MuError::RetriesExhausted(MAX_DIRECTION_ATTEMPTS as usize))
}

/// Flips the orientation of component `which` (`0..3`); μ changes sign.
pub fn reverse_component_orientation(o: &Ornament, which: usize) -> Ornament {
    o.reverse_component_orientation(which)
}
