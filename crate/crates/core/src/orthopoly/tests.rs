use super::*;
use crate::equilibrium::Potential;
use crate::kernels::bessel_hard_kernel;
use crate::quad::composite;
use crate::specfun::ln_gamma;

fn gaussian(n_param: f64) -> WeightSpec {
    WeightSpec::new(Potential::gaussian(), n_param).unwrap()
}

fn laguerre(alpha: f64, n_param: f64) -> WeightSpec {
    WeightSpec::new(
        Potential::new(vec![0.0, 1.0], true, alpha).unwrap(),
        n_param,
    )
    .unwrap()
}

fn singular_gaussian(alpha: f64, n_param: f64) -> WeightSpec {
    WeightSpec::new(
        Potential::new(vec![0.0, 0.0, 0.5], false, alpha).unwrap(),
        n_param,
    )
    .unwrap()
}

fn quartic(n_param: f64) -> WeightSpec {
    WeightSpec::new(
        Potential::new(vec![0.0, 0.0, -1.0, 0.0, 0.25], false, 0.0).unwrap(),
        n_param,
    )
    .unwrap()
}

#[test]
fn hermite_recurrence() {
    let w = gaussian(16.0);
    let t = recurrence_table(&w, 40).unwrap();
    for k in 1..=30 {
        assert!(
            (t.a[k] - k as f64 / 16.0).abs() < 1e-11,
            "a_{k} = {}",
            t.a[k]
        );
    }
    assert!(t.b.iter().all(|b| b.abs() < 1e-12));
    let g0 = (2.0 * std::f64::consts::PI / 16.0).sqrt();
    assert!((t.gamma_sq(0) - g0).abs() < 1e-11 * g0);
}

#[test]
fn laguerre_recurrence() {
    for (alpha, tol) in [(0.0, 1e-10), (1.0, 1e-10), (-0.5, 1e-10)] {
        let w = laguerre(alpha, 8.0);
        let t = recurrence_table(&w, 24).unwrap();
        for k in 0..=20 {
            let kf = k as f64;
            let b = (2.0 * kf + alpha + 1.0) / 8.0;
            assert!(
                (t.b[k] - b).abs() < tol * b,
                "alpha {alpha}: b_{k} = {}",
                t.b[k]
            );
            if k > 0 {
                let a = kf * (kf + alpha) / 64.0;
                assert!(
                    (t.a[k] - a).abs() < tol * a,
                    "alpha {alpha}: a_{k} = {}",
                    t.a[k]
                );
            }
        }
        let log_g0 = ln_gamma(alpha + 1.0) - (alpha + 1.0) * 8f64.ln();
        assert!((t.log_gamma_sq[0] - log_g0).abs() < 1e-11);
    }
}

#[test]
fn generalized_hermite_recurrence() {
    // Weight |x|^{2μ}e^{−Nx²/2}: a_k = (k + 2μ·[k odd])/N.
    for mu in [1.0, 0.5] {
        let w = singular_gaussian(mu, 10.0);
        let t = recurrence_table(&w, 24).unwrap();
        for k in 1..=20 {
            let a = (k as f64 + if k % 2 == 1 { 2.0 * mu } else { 0.0 }) / 10.0;
            assert!(
                (t.a[k] - a).abs() < 1e-10 * a,
                "mu {mu}: a_{k} = {}",
                t.a[k]
            );
        }
        let log_g0 = ln_gamma(mu + 0.5) + (mu + 0.5) * 0.2f64.ln();
        assert!((t.log_gamma_sq[0] - log_g0).abs() < 1e-11);
    }
}

#[test]
fn rejects_bad_sizes() {
    let w = gaussian(4.0);
    assert!(recurrence_table(&w, 0).is_err());
    assert!(recurrence_table(&w, MAX_DEGREE + 1).is_err());
    assert!(WeightSpec::new(Potential::gaussian(), 0.0).is_err());
}

#[test]
fn large_degree_stays_finite() {
    let w = gaussian(512.0);
    let t = recurrence_table(&w, 512).unwrap();
    assert!((t.a[512] - 1.0).abs() < 1e-9);
    let k = cd_kernel(&t, &w, 512, 0.3, 0.3) / 512.0;
    let rho = (4.0f64 - 0.09).sqrt() / (2.0 * std::f64::consts::PI);
    assert!((k - rho).abs() < 1e-2, "{k} vs {rho}");
    let far = weighted_polys(&t, &w, 2.5, 512);
    assert!(far.iter().all(|v| v.is_finite()));
}

#[test]
fn first_function_and_single_term_kernel() {
    let w = gaussian(3.0);
    let t = recurrence_table(&w, 8).unwrap();
    for x in [-1.2f64, 0.0, 0.7] {
        let phi = weighted_polys(&t, &w, x, 1)[0];
        let expect = (-0.75 * x * x).exp() / t.gamma_sq(0).sqrt();
        assert!((phi - expect).abs() < 1e-14);
        let y = 0.4;
        let phi_y = weighted_polys(&t, &w, y, 1)[0];
        assert!((cd_kernel(&t, &w, 1, x, y) - phi * phi_y).abs() < 1e-14);
    }
    // n = 1, N = 1: the one-point density is the standard normal density.
    let w = gaussian(1.0);
    let t = recurrence_table(&w, 4).unwrap();
    for x in [-2.0f64, -0.5, 0.0, 1.3] {
        let normal = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        assert!((cd_kernel(&t, &w, 1, x, x) - normal).abs() < 1e-10);
    }
}

#[test]
fn christoffel_darboux_matches_sum() {
    let cases = [
        (gaussian(16.0), 24),
        (quartic(20.0), 30),
        (laguerre(1.0, 8.0), 20),
        (singular_gaussian(1.0, 30.0), 30),
    ];
    for (w, n) in cases {
        let t = recurrence_table(&w, n).unwrap();
        let (lo, hi) = if w.potential.hard_edge {
            (0.05, 6.0)
        } else {
            (-2.2, 2.2)
        };
        let pts: Vec<f64> = (0..12).map(|i| lo + (hi - lo) * i as f64 / 11.0).collect();
        for &x in &pts {
            for &y in &pts {
                let cd = cd_kernel(&t, &w, n, x, y);
                let sum = cd_kernel_sum(&t, &w, n, x, y);
                assert!((cd - sum).abs() < 1e-10, "n {n} ({x}, {y}): {cd} vs {sum}");
            }
        }
    }
}

#[test]
fn diagonal_is_sum_of_squares() {
    let w = gaussian(24.0);
    let t = recurrence_table(&w, 24).unwrap();
    let direct: f64 = weighted_polys(&t, &w, 0.3, 24).iter().map(|p| p * p).sum();
    assert!((cd_kernel(&t, &w, 24, 0.3, 0.3) - direct).abs() < 1e-9);
}

#[test]
fn orthonormality() {
    let w = quartic(6.0);
    let t = recurrence_table(&w, 12).unwrap();
    let (lo, hi) = t.window;
    for j in 0..=10 {
        for k in 0..=j {
            let ip = composite(lo, hi, 200, 16, |x| {
                let p = weighted_polys(&t, &w, x, 11);
                p[j] * p[k]
            });
            let target = if j == k { 1.0 } else { 0.0 };
            assert!((ip - target).abs() < 1e-9, "<{j},{k}> = {ip}");
        }
    }
}

#[test]
fn trace_and_reproducing_property() {
    let w = gaussian(16.0);
    let t = recurrence_table(&w, 16).unwrap();
    let (lo, hi) = t.window;
    let trace = composite(lo, hi, 200, 16, |x| cd_kernel(&t, &w, 16, x, x));
    assert!((trace - 16.0).abs() < 1e-8, "trace {trace}");
    let (x, y) = (0.1, -0.4);
    let reproduced = composite(lo, hi, 200, 16, |s| {
        cd_kernel(&t, &w, 12, x, s) * cd_kernel(&t, &w, 12, s, y)
    });
    assert!((reproduced - cd_kernel(&t, &w, 12, x, y)).abs() < 1e-8);
}

#[test]
fn kernel_matrix_is_positive_semidefinite() {
    let w = quartic(10.0);
    let t = recurrence_table(&w, 10).unwrap();
    let pts = [-1.7, -0.31, 0.02, 0.9, 1.45];
    for k in 1..=5 {
        let m = nalgebra::DMatrix::from_fn(k, k, |i, j| cd_kernel(&t, &w, 10, pts[i], pts[j]));
        let min = m.symmetric_eigen().eigenvalues.min();
        assert!(min >= -1e-9, "k = {k}: {min}");
    }
}

#[test]
fn density_convergence_under_doubling() {
    let rho = |x: f64| (4.0 - x * x).max(0.0).sqrt() / (2.0 * std::f64::consts::PI);
    let err = |n: usize| {
        let w = gaussian(n as f64);
        let t = recurrence_table(&w, n).unwrap();
        (0..=180)
            .map(|i| -1.8 + 3.6 * i as f64 / 180.0)
            .map(|x| (cd_kernel(&t, &w, n, x, x) / n as f64 - rho(x)).abs())
            .fold(0.0, f64::max)
    };
    let (e64, e128) = (err(64), err(128));
    assert!(e128 / e64 <= 0.7, "{e64} -> {e128}");
}

#[test]
fn spectral_singularity_leaves_density_unchanged() {
    let smoothed = |alpha: f64| {
        let w = singular_gaussian(alpha, 128.0);
        let t = recurrence_table(&w, 128).unwrap();
        composite(0.9, 1.1, 20, 16, |x| cd_kernel(&t, &w, 128, x, x) / 128.0) / 0.2
    };
    let (plain, singular) = (smoothed(0.0), smoothed(1.0));
    assert!((plain - singular).abs() < 2e-2, "{plain} vs {singular}");
}

#[test]
fn rescaled_windows() {
    let w = gaussian(64.0);
    let t = recurrence_table(&w, 64).unwrap();
    let bulk = ScalingWindow::new(
        0.0,
        1.0 / std::f64::consts::PI,
        Regime::Bulk,
        vec![0.0],
        vec![0.0],
    )
    .unwrap();
    let g = rescaled_kernel(&t, &w, 64, &bulk).unwrap();
    assert!((g.values[0][0] - 1.0).abs() < 0.03);

    let raw =
        ScalingWindow::new(0.0, 1.0 / 64.0, Regime::Bulk, vec![-0.5, 0.2], vec![0.3]).unwrap();
    let g = rescaled_kernel(&t, &w, 64, &raw).unwrap();
    assert!((g.values[0][0] - cd_kernel(&t, &w, 64, -0.5, 0.3)).abs() < 1e-14);
    assert!((g.values[1][0] - cd_kernel(&t, &w, 64, 0.2, 0.3)).abs() < 1e-14);

    let outside = ScalingWindow::new(0.0, 1.0 / 64.0, Regime::Bulk, vec![40.0], vec![0.0]).unwrap();
    assert!(matches!(
        rescaled_kernel(&t, &w, 64, &outside),
        Err(crate::Error::Domain(_))
    ));
}

#[test]
fn hard_edge_diagonal_near_bessel() {
    let w = laguerre(0.0, 128.0);
    let t = recurrence_table(&w, 128).unwrap();
    let win = ScalingWindow::new(0.0, 2.0, Regime::HardEdge, vec![1.0], vec![1.0]).unwrap();
    let g = rescaled_kernel(&t, &w, 128, &win).unwrap();
    let target = bessel_hard_kernel(0.0, 1.0, 1.0).unwrap();
    assert!(
        (g.values[0][0] - target).abs() < 0.05,
        "{} vs {target}",
        g.values[0][0]
    );
}

#[test]
fn hard_edge_at_largest_degree() {
    let w = laguerre(1.0, 512.0);
    let t = recurrence_table(&w, 512).unwrap();
    let a = 512.0 * 513.0 / 512f64.powi(2);
    assert!((t.a[512] - a).abs() < 1e-10 * a);
    assert!((t.b[300] - 602.0 / 512.0).abs() < 1e-10);
}

#[test]
fn narrow_weight_uses_its_own_length_scale() {
    for n_param in [1e6, 1e9, 1e12] {
        let w = gaussian(n_param);
        let t = recurrence_table(&w, 64).unwrap();
        for k in 1..=60 {
            let a = k as f64 / n_param;
            assert!(
                (t.a[k] - a).abs() < 1e-10 * a,
                "N = {n_param}: a_{k} = {}",
                t.a[k]
            );
        }
    }
    let w = laguerre(0.0, 1e12);
    let t = recurrence_table(&w, 32).unwrap();
    for k in 1..=30 {
        let kf = k as f64;
        assert!((t.a[k] - kf * kf / 1e24).abs() < 1e-10 * kf * kf / 1e24);
        assert!((t.b[k] - (2.0 * kf + 1.0) / 1e12).abs() < 1e-10 * (2.0 * kf + 1.0) / 1e12);
    }
}
