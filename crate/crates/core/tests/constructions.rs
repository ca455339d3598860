mod common;

use std::collections::HashSet;

use common::q;
use num_traits::{One, Signed, Zero};
use ornament_core::constructions::{
    cross_polytope_sphere, default_trivial_targets, make_borromean, make_random_ornament,
    make_trivial, rational_projection_center, sphere, stereographic, ConstructionError,
};
use ornament_core::kernel::{Scalar, Vector};
use ornament_core::model::{validate_manifold, validate_ornament};

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(rows: &[Vec<Scalar>]) -> Scalar {
    if rows.len() == 1 {
        return rows[0][0].clone();
    }
    let mut acc = Scalar::zero();
    for j in 0..rows.len() {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[test]
fn spheres_are_closed_coherent_and_star_shaped() {
    for k in 1..=3 {
        for r in 0..=2 {
            if k == 3 && r == 2 {
                continue;
            }
            let s = sphere(k, r);
            assert!(validate_manifold(&s.complex).is_valid(), "k={k} r={r}");
            assert_eq!(s.complex.dim(), 2 * k - 1);
            // Each facet, coned from the origin, is positively oriented.
            for f in s.complex.facets() {
                let rows: Vec<Vec<Scalar>> = f
                    .iter()
                    .map(|&v| s.positions[v].coords().to_vec())
                    .collect();
                assert!(cofactor_det(&rows).is_positive(), "k={k} r={r} facet {f:?}");
            }
        }
    }
    let big = sphere(3, 2);
    assert!(validate_manifold(&big.complex).is_valid());
}

#[test]
fn cross_polytope_counts() {
    for k in 1..=3 {
        let s = cross_polytope_sphere(k);
        assert_eq!(s.positions.len(), 4 * k);
        assert_eq!(s.complex.facets().len(), 1 << (2 * k));
        assert!(s.positions.iter().all(|p| p.dot(p).unwrap().is_one()));
    }
}

#[test]
fn projection_center_is_a_unit_vector() {
    for n in [3, 6, 9] {
        let z = rational_projection_center(n);
        assert_eq!(z.dot(&z).unwrap(), Scalar::one());
        assert!(z.coords().iter().all(Signed::is_positive));
    }
    let z = rational_projection_center(3);
    let x = Vector::from_ints(&[1, 0, 0]);
    assert_eq!(stereographic(&x, &z).dim(), 2);
}

#[test]
fn borromean_is_valid_deterministic_and_injective_on_vertices() {
    for (k, r) in [(1, 0), (1, 1), (1, 2), (2, 0)] {
        let o = make_borromean(k, r, 0).unwrap();
        assert_eq!(o.ambient_dim(), 3 * k - 1);
        assert!(validate_ornament(&o).is_valid());
        assert_eq!(o, make_borromean(k, r, 0).unwrap());
        for c in o.components() {
            assert!(validate_manifold(c.domain()).is_valid());
            let distinct: HashSet<&Vector> = c.images().iter().collect();
            assert_eq!(distinct.len(), c.images().len());
        }
    }
}

#[test]
fn trivial_and_random_constructions() {
    for k in [1, 2] {
        let o = make_trivial(k, &default_trivial_targets(k)).unwrap();
        assert!(validate_ornament(&o).is_valid());
    }
    let t = default_trivial_targets(1);
    assert_eq!(
        make_trivial(1, &[t[0].clone(), t[0].clone(), t[1].clone()]).unwrap_err(),
        ConstructionError::BadTargets(2)
    );
    assert_eq!(
        make_borromean(0, 0, 0).unwrap_err(),
        ConstructionError::BadK
    );
    assert_eq!(
        make_random_ornament(1, 0, 0, &q(0)).unwrap_err(),
        ConstructionError::BadSpread
    );
    for seed in 0..8 {
        let o = make_random_ornament(1, 1, seed, &q(1)).unwrap();
        assert!(validate_ornament(&o).is_valid());
        assert_eq!(o, make_random_ornament(1, 1, seed, &q(1)).unwrap());
    }
}
