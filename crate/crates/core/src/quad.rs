//! Quadrature rules shared across the crate: Gauss–Legendre nodes, composite
//! panels and an adaptive Gauss–Kronrod integrator for real and complex
//! integrands.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(c + h * x))
            .sum::<f64>()
            * h
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, w * h))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared, lazily built Gauss–Legendre rule of order `n`.
pub fn gauss_legendre(n: usize) -> &'static GaussLegendre {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static GaussLegendre>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(n)
        .or_insert_with(|| Box::leak(Box::new(GaussLegendre::new(n))))
}

/// Gauss–Jacobi rule for `(1−t)^a (1+t)^b` on [-1, 1] by Golub–Welsch.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> GaussLegendre {
    assert!(a > -1.0 && b > -1.0 && n > 0);
    let ab = a + b;
    let diag: Vec<f64> = (0..n)
        .map(|k| {
            let s = 2.0 * k as f64 + ab;
            if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                (b * b - a * a) / (s * (s + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            let sq = if k == 1 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            sq.sqrt()
        })
        .collect();
    let jac = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            off[i]
        } else if j + 1 == i {
            off[j]
        } else {
            0.0
        }
    });
    let eig = jac.symmetric_eigen();
    let mu0 = ((ab + 1.0) * std::f64::consts::LN_2
        + crate::specfun::ln_gamma(a + 1.0)
        + crate::specfun::ln_gamma(b + 1.0)
        - crate::specfun::ln_gamma(ab + 2.0))
    .exp();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| (eig.eigenvalues[j], mu0 * eig.eigenvectors[(0, j)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    GaussLegendre {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Composite Gauss–Legendre over `[a, b]` split into `panels` equal panels.
pub fn composite<F: FnMut(f64) -> f64>(
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
    mut f: F,
) -> f64 {
    let rule = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let lo = a + p as f64 * h;
            rule.integrate(lo, lo + h, &mut f)
        })
        .sum()
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let kron = kron * h;
    let gauss = gauss * h;
    (kron, (kron - gauss).norm())
}

/// Adaptive Gauss–Kronrod (7/15) integration of a complex-valued function.
pub fn adaptive_complex<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Complex64> {
    let mut stack = vec![(a, b, gk15(&mut f, a, b))];
    let mut done = Complex64::new(0.0, 0.0);
    let mut evals = 0usize;
    let mut total_est = stack[0].2 .0.norm();
    while let Some((lo, hi, (val, err))) = stack.pop() {
        let width_frac = (hi - lo) / (b - a);
        let tol = (abs_tol.max(rel_tol * total_est)) * width_frac.abs().max(1e-3).sqrt();
        // Stop splitting only once the midpoint is no longer representable.
        let unresolved = (hi - lo).abs() <= 8.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1e-290);
        if err <= tol || unresolved {
            done += val;
            continue;
        }
        evals += 1;
        if evals > 20_000 {
            return Err(Error::NonConvergence(format!(
                "adaptive quadrature on [{a}, {b}] exceeded subdivision budget"
            )));
        }
        let mid = 0.5 * (lo + hi);
        let left = gk15(&mut f, lo, mid);
        let right = gk15(&mut f, mid, hi);
        total_est = total_est.max((done + left.0 + right.0).norm());
        stack.push((lo, mid, left));
        stack.push((mid, hi, right));
    }
    Ok(done)
}

/// Adaptive Gauss–Kronrod integration of a real function.
pub fn adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    adaptive_complex(|x| Complex64::new(f(x), 0.0), a, b, abs_tol, rel_tol).map(|z| z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_jacobi_integrates_singular_weight() {
        let rule = gauss_jacobi(12, 0.0, -0.5);
        let v: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(t, w)| w * t * t)
            .sum();
        assert!((v - 14.0 * 2f64.sqrt() / 15.0).abs() < 1e-14, "{v}");
        let rule = gauss_jacobi(30, 1.5, 0.25);
        let total: f64 = rule.weights.iter().sum();
        let mu0 = (2.75 * std::f64::consts::LN_2
            + crate::specfun::ln_gamma(2.5)
            + crate::specfun::ln_gamma(1.25)
            - crate::specfun::ln_gamma(3.75))
        .exp();
        assert!((total - mu0).abs() < 1e-13);
    }

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(10);
        let s: f64 = rule.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let v = rule.integrate(0.0, 2.0, |x| x.powi(19));
        assert!((v - 2f64.powi(20) / 20.0).abs() < 1e-9 * v);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let v = adaptive(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn composite_gaussian() {
        let v = composite(-10.0, 10.0, 20, 16, |x| (-x * x / 2.0).exp());
        assert!((v - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-13);
    }
}
