mod common;

use common::{facet_points, is_interior, q, sphere_map};
use num_traits::Signed;
use ornament_core::constructions::{
    default_trivial_targets, make_borromean, make_random_ornament, make_trivial,
};
use ornament_core::degree::{check_dimensions, unnormalized_sphere_map};
use ornament_core::kernel::Vector;
use ornament_core::model::perturb_ornament;
use ornament_core::{mu_via_degree, mu_via_degree_seeded, MuError, Ornament, RayDirection};

fn audit(o: &Ornament, seed: u64) -> i64 {
    let r = mu_via_degree_seeded(o, seed).unwrap();
    let v = r.ray.vector();
    for s in &r.solutions {
        assert!(s.s.is_positive());
        assert!(s.barycentric.iter().all(|b| is_interior(b)));
        let [x, y, z] = facet_points(o, s.facets, &s.barycentric);
        let g = sphere_map(&x, &y, &z);
        let target: Vec<_> = v.coords().iter().map(|c| c * &s.s).collect();
        assert_eq!(g, target, "G(x, y, z) = s·v fails at {:?}", s.facets);
    }
    assert_eq!(
        r.mu,
        r.solutions.iter().map(|s| i64::from(s.sign)).sum::<i64>()
    );
    r.mu
}

#[test]
fn sphere_map_vanishes_only_on_the_diagonal() {
    let a = Vector::from_ints(&[1, 2]);
    let b = Vector::from_ints(&[1, 3]);
    assert!(unnormalized_sphere_map(&a, &a, &a).unwrap().is_zero());
    assert!(!unnormalized_sphere_map(&a, &a, &b).unwrap().is_zero());
    let g = unnormalized_sphere_map(
        &Vector::from_ints(&[1]),
        &Vector::from_ints(&[0]),
        &Vector::from_ints(&[0]),
    )
    .unwrap();
    assert_eq!(g, Vector::from_ints(&[2, -1]));
    let e1 = Vector::from_ints(&[1, 0]);
    let zero = Vector::zeros(2);
    assert_eq!(
        unnormalized_sphere_map(&e1, &zero, &zero).unwrap(),
        Vector::from_ints(&[2, 0, -1, 0])
    );
    // With x + y + z = 0 the map is (3x, 3y).
    let (x, y) = (Vector::from_ints(&[2, -5]), Vector::from_ints(&[1, 7]));
    let z = Vector::from_ints(&[-3, -2]);
    let scaled = x.scale(&q(3)).concat(&y.scale(&q(3)));
    assert_eq!(unnormalized_sphere_map(&x, &y, &z).unwrap(), scaled);
}

#[test]
fn borromean_k1_is_one_and_flips_under_reversal() {
    let o = make_borromean(1, 0, 0).unwrap();
    assert_eq!(audit(&o, 1), 1);
    for c in 0..3 {
        assert_eq!(audit(&o.reverse_component_orientation(c), 2), -1);
    }
    let twice = o
        .reverse_component_orientation(0)
        .reverse_component_orientation(2);
    assert_eq!(audit(&twice, 3), 1);
}

#[test]
fn borromean_k2_is_one() {
    let o = make_borromean(2, 0, 0).unwrap();
    assert_eq!(audit(&o, 5), 1);
}

#[test]
fn trivial_ornament_has_no_preimages() {
    for k in [1, 2] {
        let o = make_trivial(k, &default_trivial_targets(k)).unwrap();
        let r = mu_via_degree_seeded(&o, 9).unwrap();
        assert_eq!(r.mu, 0);
        assert!(r.solutions.is_empty());
    }
}

#[test]
fn result_does_not_depend_on_the_direction() {
    let o = make_borromean(1, 1, 0).unwrap();
    for seed in common::seeds(11, 12) {
        assert_eq!(audit(&o, seed), 1);
    }
    let spread = q(1);
    for seed in 0..6 {
        let o = make_random_ornament(1, 0, seed, &spread).unwrap();
        let first = audit(&o, 0);
        for s in 1..6 {
            assert_eq!(audit(&o, s), first);
        }
    }
}

#[test]
fn preimage_through_a_vertex_is_rejected() {
    // The ray through G of three vertex images is not a regular value.
    let o = make_borromean(1, 0, 0).unwrap();
    let c = o.components();
    let g =
        unnormalized_sphere_map(&c[0].images()[0], &c[1].images()[0], &c[2].images()[0]).unwrap();
    let ray = RayDirection::new(g).unwrap();
    assert!(matches!(
        mu_via_degree(&o, &ray),
        Err(MuError::NonGenericDirection { .. })
    ));
}

#[test]
fn perturbation_keeps_mu() {
    let o = make_borromean(1, 1, 0).unwrap();
    let eps = ornament_core::Scalar::new(1.into(), 64.into());
    for seed in 0..5 {
        let p = perturb_ornament(&o, &eps, seed).unwrap();
        assert_eq!(audit(&p, seed), 1);
    }
}

#[test]
fn dimension_contract() {
    let o = make_borromean(1, 0, 0).unwrap();
    assert!(check_dimensions(&o).is_ok());
    let wrong = RayDirection::new(Vector::from_ints(&[1, 0, 0])).unwrap();
    assert!(mu_via_degree(&o, &wrong).is_err());
}
