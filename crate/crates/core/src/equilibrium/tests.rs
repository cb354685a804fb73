use std::f64::consts::PI;

use super::*;
use crate::error::Error;

fn quartic(t: f64) -> Potential {
    Potential::new(vec![0.0, 0.0, -t, 0.0, 0.25], false, 0.0).unwrap()
}

#[test]
fn potential_validation() {
    assert!(Potential::new(vec![1.0, 2.0], false, 0.0).is_err());
    assert!(Potential::new(vec![0.0, 0.0, 0.0, 1.0], false, 0.0).is_err());
    assert!(Potential::new(vec![0.0, 0.0, -1.0], false, 0.0).is_err());
    assert!(Potential::new(vec![0.0, 1.0], true, 0.0).is_ok());
    assert!(Potential::new(vec![0.0, -1.0, 1.0], true, 0.0).is_err());
}

#[test]
fn semicircle() {
    let v = Potential::gaussian();
    let mu = solve_equilibrium(&v).unwrap();
    assert!((mu.support.0 + 2.0).abs() < 1e-10 && (mu.support.1 - 2.0).abs() < 1e-10);
    assert!((mu.h[0] - 0.5).abs() < 1e-12 && mu.h.len() == 1);
    assert!((density(&mu, 0.0) - 1.0 / PI).abs() < 1e-12);
    assert_eq!(density(&mu, 2.5), 0.0);
    for x in [-3.0, -2.0, 0.0, 0.7, 2.0] {
        assert!((qv(&v, &mu, x).unwrap() - (x * x / 4.0 - 1.0)).abs() < 1e-14);
    }
    assert!((mu.mass() - 1.0).abs() < 1e-12);
    assert!(effective_potential(&mu, &v, 0.0).abs() < 1e-10);
    assert!(effective_potential(&mu, &v, 2.0).abs() < 1e-10);
    assert!(effective_potential(&mu, &v, 3.0) > 0.1);
    // ℓ for the semicircle is 1/2 + 2 log 2 − ... : V(0) − 2U(0) with U(0) = −1/2.
    assert!((mu.ell - 1.0).abs() < 1e-12);
    assert!(classify(&mu, &v).is_empty());
}

#[test]
fn critical_quartic() {
    let v = quartic(1.0);
    let mu = solve_equilibrium(&v).unwrap();
    assert!((mu.support.0 + 2.0).abs() < 1e-9 && (mu.support.1 - 2.0).abs() < 1e-9);
    let mut worst = 0.0f64;
    for i in 0..=380 {
        let x = -1.9 + 0.01 * i as f64;
        let exact = x * x * (4.0 - x * x).sqrt() / (2.0 * PI);
        worst = worst.max((density(&mu, x) - exact).abs());
    }
    assert!(worst < 1e-6, "{worst}");
    assert!(qv(&v, &mu, 0.0).unwrap().abs() < 1e-9);
    let found = classify(&mu, &v);
    assert_eq!(found.len(), 1, "{found:?}");
    assert!(found[0].location.abs() < 1e-3);
    assert_eq!(found[0].kind, SingularType::InteriorSingular { k: 1 });
}

#[test]
fn perturbed_quartics() {
    match solve_equilibrium(&quartic(1.001)) {
        Err(Error::MultiCut { intervals }) => assert_eq!(intervals, 2),
        other => panic!("expected two cuts, got {other:?}"),
    }
    let v = quartic(0.999);
    let mu = solve_equilibrium(&v).unwrap();
    let min_rho2 = -mu.q.eval(0.0);
    assert!(min_rho2 > INTERIOR_TOL);
    assert!(classify(&mu, &v).is_empty());
}

#[test]
fn hard_edge_marchenko_pastur() {
    let v = Potential::new(vec![0.0, 1.0], true, 0.0).unwrap();
    let mu = solve_equilibrium(&v).unwrap();
    assert!(mu.support.0 == 0.0 && (mu.support.1 - 4.0).abs() < 1e-10);
    for x in [0.1f64, 1.0, 2.5, 3.9] {
        let exact = ((4.0 - x) / x).sqrt() / (2.0 * PI);
        assert!((density(&mu, x) - exact).abs() < 1e-10);
        assert!((mu.density_h(x) - exact).abs() < 1e-10);
    }
    assert!(matches!(mu.qv(0.0), Err(Error::Domain(_))));
    assert!((mu.mass() - 1.0).abs() < 1e-12);
    assert!(effective_potential(&mu, &v, 1.3).abs() < 1e-9);
}

#[test]
fn general_quartic_fixed_point() {
    let v = Potential::new(vec![0.0, 0.0, 0.5, 0.0, 1.0 / 12.0], false, 0.0).unwrap();
    let mu = solve_equilibrium(&v).unwrap();
    // Self-consistency: moments of the returned density reproduce the moment vector.
    let (a, b) = mu.support;
    let again = mu.q.moments_over(a, b, mu.moments.len(), 4096);
    for (x, y) in again.iter().zip(&mu.moments) {
        assert!((x - y).abs() < 1e-9);
    }
    for i in 1..40 {
        let x = a + (b - a) * i as f64 / 40.0;
        assert!((density(&mu, x) - mu.density_h(x)).abs() < 1e-8);
        assert!(effective_potential(&mu, &v, x).abs() < 1e-8);
    }
    for x in [b + 0.1, b + 1.0, a - 0.5] {
        assert!(effective_potential(&mu, &v, x) > -1e-8);
    }
    // q_V has degree 2(deg V − 1).
    assert_eq!(crate::poly::degree(&mu.q.poly), Some(6));
}

#[test]
fn asymmetric_potential_and_dilation() {
    let v = Potential::new(vec![0.0, 0.3, 0.5, 0.2, 0.25], false, 0.0).unwrap();
    let mu = solve_equilibrium(&v).unwrap();
    assert!((mu.mass() - 1.0).abs() < 1e-10);
    let mu2 = solve_equilibrium(&v.dilate(2.0)).unwrap();
    assert!((mu2.support.0 - mu.support.0 / 2.0).abs() < 1e-9);
    assert!((mu2.support.1 - mu.support.1 / 2.0).abs() < 1e-9);
}

#[test]
fn grid_oracle_semicircle() {
    let v = Potential::gaussian();
    let g = grid_energy_minimize_on(&v, -3.0, 3.0, 800, None).unwrap();
    assert!((g.mass() - 1.0).abs() < 1e-12);
    let rho = g.density();
    let worst = g
        .centers
        .iter()
        .zip(&rho)
        .map(|(&x, &r)| (r - (4.0 - x * x).max(0.0).sqrt() / (2.0 * PI)).abs())
        .fold(0.0, f64::max);
    assert!(worst < 5e-3, "{worst}");
    for pair in g.energies.windows(2) {
        assert!(pair[1] <= pair[0] + 1e-12);
    }
}

#[test]
fn grid_oracle_agrees_with_solver() {
    for v in [
        Potential::gaussian(),
        quartic(1.0),
        Potential::new(vec![0.0, 0.0, 0.5, 0.0, 1.0 / 12.0], false, 0.0).unwrap(),
    ] {
        let mu = solve_equilibrium(&v).unwrap();
        let g = grid_energy_minimize(&v, 600).unwrap();
        let worst = g
            .centers
            .iter()
            .zip(g.density())
            .map(|(&x, r)| (r - density(&mu, x)).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-2, "{v:?}: {worst}");
    }
}
