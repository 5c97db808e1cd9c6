use std::collections::BTreeSet;

use num_complex::Complex64;

use dessinry::covers::roots::{eval, real_coeffs, relative_residual};
use dessinry::covers::tracking::{numerical_monodromy, CoverSpec, TrackOptions};
use dessinry::covers::{
    belyi_example, classify_lift, hurwitz_cover, hurwitz_dessin, hurwitz_fiber, hurwitz_point,
    poly_roots, CoverError, Lift,
};
use dessinry::covers::hurwitz::{fiber_quartic, hurwitz_dessin_with};
use dessinry::origami::orbit_of_dessins;
use dessinry::MonodromyTuple;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Closed forms for the fiber over a = 2, in the order L1, L2, L3, L4.
fn closed_forms() -> [Complex64; 4] {
    let r2 = 2f64.sqrt();
    let q3 = 3f64.powf(0.25);
    let r3 = 3f64.sqrt();
    [
        c((1.0 + r3) / 2.0, r2 * q3 / 2.0),
        c((1.0 + r3) / 2.0, -r2 * q3 / 2.0),
        c((1.0 - r2 * q3 - r3) / 2.0, 0.0),
        c((1.0 + r2 * q3 - r3) / 2.0, 0.0),
    ]
}

fn profile_4_211() -> Vec<Vec<usize>> {
    vec![vec![4], vec![2, 1, 1], vec![2, 1, 1], vec![2, 1, 1]]
}

#[test]
fn fiber_over_two_matches_closed_forms() {
    let fiber = hurwitz_fiber(c(2.0, 0.0)).unwrap();
    for (lift, s) in Lift::ALL.iter().zip(closed_forms()) {
        let p = fiber.iter().find(|p| p.lift == Some(*lift)).unwrap();
        assert!((p.s - s).norm() < 1e-9, "{lift}: {} vs {}", p.s, s);
        assert_eq!(classify_lift(s).unwrap(), Some(*lift));
    }
}

#[test]
fn fiber_over_three() {
    let phi = real_coeffs(&[-3.0, 6.0, 0.0, -2.0, 1.0]);
    assert_eq!(phi, fiber_quartic(c(3.0, 0.0)));
    let roots = poly_roots(&phi).unwrap();
    for z in &roots {
        assert!(eval(&phi, *z).norm() <= 1e-10);
    }
    assert!(roots.iter().any(|z| (z - c(-1.5088444949, 0.0)).norm() < 1e-10));
    assert!(roots.iter().any(|z| (z - c(0.5379312192, 0.0)).norm() < 1e-10));
    assert_eq!((hurwitz_point(3.0, Lift::L3).unwrap().s.re * 1e10).trunc(), -15088444949.0);
    assert_eq!((hurwitz_point(3.0, Lift::L4).unwrap().s.re * 1e10).trunc(), 5379312192.0);
}

#[test]
fn lift_labels_are_a_full_set() {
    for a in [2.0, 3.0, 5.0, 10.0] {
        let labels: BTreeSet<_> =
            hurwitz_fiber(c(a, 0.0)).unwrap().iter().filter_map(|p| p.lift).collect();
        assert_eq!(labels.len(), 4, "a = {a}");
    }
}

#[test]
fn projection_values() {
    let s3 = closed_forms()[2];
    assert!((dessinry::covers::hurwitz_projection(s3).unwrap() - 2.0).norm() < 1e-12);
    let s1 = closed_forms()[0];
    assert!((dessinry::covers::hurwitz_projection(s1).unwrap() - 2.0).norm() < 1e-12);
}

#[test]
fn degree_one_cover_is_trivial() {
    let spec = CoverSpec::new(real_coeffs(&[0.0, 1.0]), vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let t = numerical_monodromy(&spec, &TrackOptions::default()).unwrap();
    assert_eq!(t, MonodromyTuple::trivial(3));
}

#[test]
fn belyi_example_profile() {
    let t = numerical_monodromy(&belyi_example(), &TrackOptions::default()).unwrap();
    assert_eq!(t.cycle_profile().0, vec![vec![3], vec![2, 1], vec![2, 1]]);
    assert_eq!(t.genus().unwrap(), 0);
}

#[test]
fn hurwitz_monodromy_relations() {
    let tuples: Vec<MonodromyTuple> =
        Lift::ALL.iter().map(|&l| hurwitz_dessin(2.0, l).unwrap()).collect();
    for t in &tuples {
        assert_eq!(t.cycle_profile().0, profile_4_211());
        assert_eq!(t.genus().unwrap(), 0);
        assert!(!t.is_normal().unwrap());
    }
    let [l1, l2, l3, l4] = [&tuples[0], &tuples[1], &tuples[2], &tuples[3]];
    assert!(!l3.isomorphic(l4).unwrap());
    assert_eq!(l2.orientation_reverse().unwrap().canonical_form().unwrap(), *l1);
    assert_eq!(hurwitz_dessin(3.0, Lift::L3).unwrap(), *l3);
    let orbit = orbit_of_dessins(&[l1.clone()]).unwrap();
    for t in &tuples {
        assert!(orbit.contains(t));
    }
    let distinct: BTreeSet<_> = tuples.iter().collect();
    assert_eq!(distinct.len(), 4);
}

#[test]
fn monodromy_is_stable_under_loop_choices() {
    let defaults = TrackOptions::default();
    for lift in Lift::ALL {
        let reference = hurwitz_dessin(2.0, lift).unwrap();
        let variants = [
            TrackOptions { base: c(0.7, 1.3), ..defaults },
            TrackOptions { radius_factor: defaults.radius_factor / 2.0, ..defaults },
            TrackOptions { max_step: defaults.max_step / 2.0, ..defaults },
        ];
        for opts in variants {
            assert_eq!(hurwitz_dessin_with(2.0, lift, &opts).unwrap(), reference, "{lift} {opts:?}");
        }
    }
}

#[test]
fn lift_constancy_over_samples() {
    for lift in Lift::ALL {
        let reference = hurwitz_dessin(2.0, lift).unwrap();
        for a in [3.0, 5.0, 10.0] {
            assert_eq!(hurwitz_dessin(a, lift).unwrap(), reference, "{lift} at a = {a}");
        }
    }
}

#[test]
fn missing_branch_point_is_detected() {
    let s = hurwitz_point(2.0, Lift::L3).unwrap().s;
    let mut spec = hurwitz_cover(s).unwrap();
    spec.branch_points.pop();
    let err = numerical_monodromy(&spec, &TrackOptions::default()).unwrap_err();
    assert!(matches!(err, CoverError::ProductConstraintViolation { .. }), "{err}");
}

#[test]
fn fiber_residuals_are_small() {
    for a in [2.0, 3.0] {
        let q = fiber_quartic(c(a, 0.0));
        for z in poly_roots(&q).unwrap() {
            assert!(relative_residual(&q, z) < 1e-12);
        }
    }
}
