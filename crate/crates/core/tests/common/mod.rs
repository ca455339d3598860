#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use ornament_core::kernel::{Scalar, Vector};
use ornament_core::Ornament;

pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

/// `Σ λᵢ pᵢ`, evaluated coordinate by coordinate.
pub fn affine(points: &[&Vector], weights: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(points.len(), weights.len());
    let dim = points[0].dim();
    (0..dim)
        .map(|c| {
            points
                .iter()
                .zip(weights)
                .fold(Scalar::zero(), |acc, (p, w)| acc + &p[c] * w)
        })
        .collect()
}

/// Barycentric coordinates must be strictly positive and sum to one.
pub fn is_interior(weights: &[Scalar]) -> bool {
    weights.iter().all(Signed::is_positive) && weights.iter().sum::<Scalar>().is_one()
}

/// `(2x − y − z, 2y − x − z)`, written out independently of the library.
pub fn sphere_map(x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
    let two = q(2);
    let a = x.iter().zip(y).zip(z).map(|((x, y), z)| &two * x - y - z);
    let b = x.iter().zip(y).zip(z).map(|((x, y), z)| &two * y - x - z);
    a.chain(b).collect()
}

/// Images of the facet points named by `facets` and `barycentric`.
pub fn facet_points(
    o: &Ornament,
    facets: [usize; 3],
    barycentric: &[Vec<Scalar>; 3],
) -> [Vec<Scalar>; 3] {
    std::array::from_fn(|c| affine(&o.component(c).facet_images(facets[c]), &barycentric[c]))
}

/// Seeds shared by tests that want a reproducible stream.
pub fn seeds(base: u64, n: u64) -> impl Iterator<Item = u64> {
    (0..n).map(move |i| base.wrapping_mul(0x9e37_79b9).wrapping_add(i))
}
