//! Canonical ornaments: cross-polytope spheres, the Borromean ornament,
//! trivial ornaments and seeded random families.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::kernel::{
    derive_seed, random_rational_perturbation, rng_for, unit_offset, Scalar, Vector,
};
use crate::model::{validate_ornament, ModelError, Ornament, PLMap, TriangulatedManifold};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("k must be at least 1")]
    BadK,
    #[error("spread must be positive")]
    BadSpread,
    #[error("targets must be three pairwise distinct points of R^{0}")]
    BadTargets(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A triangulated sphere `S^{n−1}` with vertex positions in `ℝⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereModel {
    pub complex: TriangulatedManifold,
    pub positions: Vec<Vector>,
}

/// Boundary of the `2k`-dimensional cross-polytope, oriented as the boundary
/// of the ball (outward normal first). Vertex `2i` is `+eᵢ`, `2i+1` is `−eᵢ`.
pub fn cross_polytope_sphere(k: usize) -> SphereModel {
    let n = 2 * k;
    let positions = (0..n)
        .flat_map(|i| {
            let e = Vector::basis(n, i);
            let minus = e.scale(&-Scalar::one());
            [e, minus]
        })
        .collect();
    let facets = (0u64..1 << n)
        .map(|mask| {
            let mut f: Vec<usize> = (0..n).map(|i| 2 * i + ((mask >> i) & 1) as usize).collect();
            // det(ε₁e₁, …, εₙeₙ) = Πεᵢ must be positive.
            if mask.count_ones() % 2 == 1 {
                f.swap(0, 1);
            }
            f
        })
        .collect();
    SphereModel {
        complex: TriangulatedManifold::new(n - 1, 2 * n, facets).expect("well-formed facets"),
        positions,
    }
}

/// Rational approximation of `1/‖p‖` with denominator `2^16`.
fn inverse_norm_approx(p: &Vector) -> Scalar {
    let sq = p.dot(p).expect("same vector");
    // floor(sqrt(den · 2^32 / num)) / 2^16
    let scale = BigInt::one() << 32;
    let q: BigInt = (sq.denom() * scale) / sq.numer();
    Scalar::new(q.sqrt(), BigInt::one() << 16)
}

/// One round of stellar subdivision: every facet is coned from a new vertex
/// at its barycenter, pushed out radially to roughly unit distance.
pub fn stellar_subdivide(sphere: &SphereModel) -> SphereModel {
    let mut positions = sphere.positions.clone();
    let mut facets = Vec::new();
    for facet in sphere.complex.facets() {
        let pts: Vec<&Vector> = facet.iter().map(|&v| &sphere.positions[v]).collect();
        let w = Scalar::new(1.into(), (facet.len() as i64).into());
        let bary = Vector::combination(&pts, &vec![w; pts.len()]).expect("common dim");
        let pushed = bary.scale(&inverse_norm_approx(&bary));
        let apex = positions.len();
        positions.push(pushed);
        for i in 0..facet.len() {
            let mut f = facet.clone();
            f[i] = apex;
            facets.push(f);
        }
    }
    SphereModel {
        complex: TriangulatedManifold::new(sphere.complex.dim(), positions.len(), facets)
            .expect("well-formed facets"),
        positions,
    }
}

/// Cross-polytope sphere after `r` rounds of stellar subdivision.
pub fn sphere(k: usize, r: usize) -> SphereModel {
    (0..r).fold(cross_polytope_sphere(k), |s, _| stellar_subdivide(&s))
}

/// Exact rational unit vector in `ℝⁿ` close to `(1, …, 1)/√n`, obtained by
/// inverse stereographic projection of a rational point from `e_n`.
pub fn rational_projection_center(n: usize) -> Vector {
    // Preimage of (1,…,1)/√n is u = (1,…,1)/(√n − 1); approximate with
    // denominator 64.
    let d = BigInt::from(64);
    let root = (BigInt::from(n as u64) * &d * &d).sqrt();
    let u = Scalar::new(d.clone(), root - &d);
    let u2 = &u * &u * Scalar::from_integer(BigInt::from(n as u64 - 1));
    let denom = &u2 + Scalar::one();
    let mut coords: Vec<Scalar> = (0..n - 1)
        .map(|_| Scalar::from_integer(2.into()) * &u / &denom)
        .collect();
    coords.push((&u2 - Scalar::one()) / &denom);
    Vector::new(coords)
}

/// Central projection from the unit vector `z` onto `z^⊥`, followed by
/// dropping the last coordinate (an isomorphism `z^⊥ → ℝ^{n−1}` since
/// `z_n ≠ 0`). Requires `⟨x, z⟩ ≠ 1`.
pub fn stereographic(x: &Vector, z: &Vector) -> Vector {
    let c = x.dot(z).expect("same dim");
    let denom = Scalar::one() - &c;
    let proj = x.sub(&z.scale(&c)).expect("same dim").scale(&denom.recip());
    let mut coords = proj.into_coords();
    coords.pop();
    Vector::new(coords)
}

/// Places a point of `ℝ^{2k}` into coordinate plane `which` of
/// `ℝ^{3k} = ℝ^k × ℝ^k × ℝ^k`: planes `ℝ^k×ℝ^k×0`, `ℝ^k×0×ℝ^k`,
/// `0×ℝ^k×ℝ^k`, with block orders `(0, 1)`, `(2, 0)`, `(1, 2)`. The cyclic
/// orders make the rotation of blocks an orientation-preserving symmetry
/// that permutes the components.
fn embed_in_plane(p: &Vector, k: usize, which: usize) -> Vector {
    let blocks: [usize; 2] = match which {
        0 => [0, 1],
        1 => [2, 0],
        _ => [1, 2],
    };
    let mut out = vec![Scalar::zero(); 3 * k];
    for (half, &block) in blocks.iter().enumerate() {
        for i in 0..k {
            out[block * k + i] = p[half * k + i].clone();
        }
    }
    Vector::new(out)
}

/// The Borromean ornament in `ℝ^{3k−1}`: three level-`r` spheres in the
/// coordinate `2k`-planes of `ℝ^{3k}`, projected from a rational unit vector
/// near `(1, …, 1)/√(3k)`. If the projection fails validation, vertex images
/// are perturbed with seeded offsets of growing precision until it passes.
pub fn make_borromean(k: usize, r: usize, seed: u64) -> Result<Ornament, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::BadK);
    }
    let s = sphere(k, r);
    let z = rational_projection_center(3 * k);
    let maps: Vec<PLMap> = (0..3)
        .map(|which| {
            let images = s
                .positions
                .iter()
                .map(|p| stereographic(&embed_in_plane(p, k, which), &z))
                .collect();
            PLMap::new(s.complex.clone(), 3 * k - 1, images)
        })
        .collect::<Result<_, _>>()?;
    let [a, b, c]: [PLMap; 3] = maps.try_into().expect("three maps");
    let o = Ornament::new([a, b, c])?;
    if validate_ornament(&o).is_valid() {
        return Ok(o);
    }
    let mut eps = Scalar::new(1.into(), 1024.into());
    for attempt in 0.. {
        let images: [Vec<Vector>; 3] = std::array::from_fn(|c| {
            o.component(c)
                .images()
                .iter()
                .enumerate()
                .map(|(v, p)| {
                    let s = derive_seed(derive_seed(seed, attempt), ((c as u64) << 32) | v as u64);
                    random_rational_perturbation(p, &eps, s).expect("positive eps")
                })
                .collect()
        });
        let candidate = o.with_images(images)?;
        if validate_ornament(&candidate).is_valid() {
            return Ok(candidate);
        }
        eps /= Scalar::from_integer(2.into());
    }
    unreachable!("the perturbation loop only exits by returning")
}

/// Three cross-polytope spheres mapped to three distinct points.
pub fn make_trivial(k: usize, targets: &[Vector; 3]) -> Result<Ornament, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::BadK);
    }
    let m = 3 * k - 1;
    if targets.iter().any(|t| t.dim() != m)
        || targets[0] == targets[1]
        || targets[1] == targets[2]
        || targets[0] == targets[2]
    {
        return Err(ConstructionError::BadTargets(m));
    }
    let s = cross_polytope_sphere(k);
    let maps: Vec<PLMap> = targets
        .iter()
        .map(|t| PLMap::new(s.complex.clone(), m, vec![t.clone(); s.positions.len()]))
        .collect::<Result<_, _>>()?;
    let [a, b, c]: [PLMap; 3] = maps.try_into().expect("three maps");
    Ok(Ornament::new([a, b, c])?)
}

/// Default trivial targets: `0`, `e₁`, `e₂`.
pub fn default_trivial_targets(k: usize) -> [Vector; 3] {
    let m = 3 * k - 1;
    [Vector::zeros(m), Vector::basis(m, 0), Vector::basis(m, 1)]
}

/// Box centers of the random family: `0`, `e₁`, `e₂`.
fn random_centers(m: usize) -> [Vector; 3] {
    [Vector::zeros(m), Vector::basis(m, 0), Vector::basis(m, 1)]
}

/// Level-`r` sphere domains with vertex images drawn uniformly (denominator
/// `2^8`) from boxes of half-width `spread` around `0`, `e₁` and `e₂`.
/// Samples are rejected until the result is a valid ornament.
pub fn make_random_ornament(
    k: usize,
    r: usize,
    seed: u64,
    spread: &Scalar,
) -> Result<Ornament, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::BadK);
    }
    if *spread <= Scalar::zero() {
        return Err(ConstructionError::BadSpread);
    }
    let m = 3 * k - 1;
    let s = sphere(k, r);
    let centers = random_centers(m);
    for attempt in 0.. {
        let mut rng = rng_for(derive_seed(seed, attempt));
        let maps: Vec<PLMap> = centers
            .iter()
            .map(|c| {
                let images = (0..s.positions.len())
                    .map(|_| {
                        c.coords()
                            .iter()
                            .map(|x| x + spread * unit_offset(&mut rng, 1 << 8))
                            .collect::<Vec<_>>()
                            .into()
                    })
                    .collect();
                PLMap::new(s.complex.clone(), m, images)
            })
            .collect::<Result<_, _>>()?;
        let [a, b, c]: [PLMap; 3] = maps.try_into().expect("three maps");
        let o = Ornament::new([a, b, c])?;
        if validate_ornament(&o).is_valid() {
            return Ok(o);
        }
    }
    unreachable!("the sampling loop only exits by returning")
}
