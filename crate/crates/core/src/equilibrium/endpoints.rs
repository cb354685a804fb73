//! One-cut endpoint conditions, evaluated with Gauss–Chebyshev rules that are
//! exact for the polynomial integrands involved.

use std::f64::consts::PI;

use super::Potential;
use crate::error::{Error, Result};
use crate::poly;

fn chebyshev_nodes(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|j| ((2 * j - 1) as f64 * PI / (2 * n) as f64).cos())
        .collect()
}

fn node_count(v: &Potential) -> usize {
    4 * v.degree() + 8
}

/// Points of the support as images of Chebyshev nodes.
fn support_points(a: f64, b: f64, s: &[f64]) -> Vec<f64> {
    s.iter()
        .map(|s| 0.5 * (a + b) + 0.5 * (b - a) * s)
        .collect()
}

/// Residual of the endpoint conditions; one equation at a hard edge, two otherwise.
pub(crate) fn conditions(v: &Potential, a: f64, b: f64) -> Vec<f64> {
    let n = node_count(v);
    let s = chebyshev_nodes(n);
    let x = support_points(a, b, &s);
    let dv: Vec<f64> = x.iter().map(|&x| v.derivative(x)).collect();
    if v.hard_edge {
        let total: f64 = dv.iter().zip(&s).map(|(d, s)| d * (1.0 + s)).sum();
        vec![b * total / (4 * n) as f64 - 1.0]
    } else {
        let mean: f64 = dv.iter().sum::<f64>() / n as f64;
        let first: f64 = dv.iter().zip(&x).map(|(d, x)| d * x).sum::<f64>() / n as f64;
        vec![mean, first - 2.0]
    }
}

/// Newton iteration on the endpoint conditions from an initial support.
pub(crate) fn refine(v: &Potential, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let mut r = conditions(v, a, b);
    let norm = |r: &[f64]| r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for _ in 0..60 {
        if norm(&r) < 1e-15 {
            break;
        }
        let h = 1e-7 * (b - a);
        let (da, db);
        if v.hard_edge {
            let d = (conditions(v, a, b + h)[0] - r[0]) / h;
            da = 0.0;
            db = r[0] / d;
        } else {
            let ra = conditions(v, a + h, b);
            let rb = conditions(v, a, b + h);
            let j = [
                [(ra[0] - r[0]) / h, (rb[0] - r[0]) / h],
                [(ra[1] - r[1]) / h, (rb[1] - r[1]) / h],
            ];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 || !det.is_finite() {
                break;
            }
            da = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
            db = (j[0][0] * r[1] - j[1][0] * r[0]) / det;
        }
        let mut lambda = 1.0;
        let mut moved = false;
        for _ in 0..30 {
            let (ta, tb) = (a - lambda * da, b - lambda * db);
            if tb > ta {
                let rt = conditions(v, ta, tb);
                if norm(&rt) < norm(&r) {
                    a = ta;
                    b = tb;
                    r = rt;
                    moved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !moved {
            break;
        }
    }
    if norm(&r) > 1e-10 {
        return Err(Error::NonConvergence(format!(
            "endpoint conditions stalled at residual {:.3e}",
            norm(&r)
        )));
    }
    Ok((a, b))
}

/// The polynomial `h` with density `h(x)√((b−x)(x−a))/(2π)`, or `h(x)√((b−x)/x)/(2π)` at a hard edge.
pub(crate) fn density_polynomial(v: &Potential, a: f64, b: f64) -> Vec<f64> {
    let n = node_count(v);
    let s = chebyshev_nodes(n);
    let x = support_points(a, b, &s);
    let d = v.derivative_coefficients();
    let t: Vec<f64> = (0..d.len().max(1))
        .map(|k| {
            let sum: f64 = x
                .iter()
                .zip(&s)
                .map(|(x, s)| x.powi(k as i32) * if v.hard_edge { 1.0 + s } else { 1.0 })
                .sum();
            if v.hard_edge {
                b * sum / (2 * n) as f64
            } else {
                sum / n as f64
            }
        })
        .collect();
    let mut h = vec![0.0; d.len().saturating_sub(1).max(1)];
    for (m, dm) in d.iter().enumerate().skip(1) {
        for (i, hi) in h.iter_mut().enumerate().take(m) {
            *hi += dm * t[m - 1 - i];
        }
    }
    poly::trim(h)
}

/// Power moments `m_0 … m_{count−1}` of the density built from `h`.
pub(crate) fn moments(v: &Potential, a: f64, b: f64, h: &[f64], count: usize) -> Vec<f64> {
    let n = node_count(v);
    if v.hard_edge {
        let s = chebyshev_nodes(n);
        let x = support_points(a, b, &s);
        (0..count)
            .map(|k| {
                let sum: f64 = x
                    .iter()
                    .zip(&s)
                    .map(|(x, s)| x.powi(k as i32) * poly::eval(h, *x) * (1.0 - s))
                    .sum();
                b * sum / (4 * n) as f64
            })
            .collect()
    } else {
        let r = 0.5 * (b - a);
        let c = 0.5 * (a + b);
        let nodes: Vec<(f64, f64)> = (1..=n)
            .map(|j| {
                let th = j as f64 * PI / (n + 1) as f64;
                (c + r * th.cos(), th.sin().powi(2))
            })
            .collect();
        (0..count)
            .map(|k| {
                let sum: f64 = nodes
                    .iter()
                    .map(|(x, w)| w * x.powi(k as i32) * poly::eval(h, *x))
                    .sum();
                r * r * sum / (2 * (n + 1)) as f64
            })
            .collect()
    }
}

/// Number of maximal subintervals of `[a, b]` on which `h` is nonnegative,
/// or zero when `h` is nonnegative throughout up to `tol·max|h|`.
pub(crate) fn positive_pieces(h: &[f64], a: f64, b: f64, tol: f64) -> usize {
    let samples = 4001;
    let values: Vec<f64> = (0..samples)
        .map(|i| poly::eval(h, a + (b - a) * i as f64 / (samples - 1) as f64))
        .collect();
    let scale = values
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    if values.iter().all(|&y| y >= -tol * scale) {
        return 0;
    }
    let mut pieces = 0;
    let mut inside = false;
    for &y in &values {
        let ok = y >= 0.0;
        if ok && !inside {
            pieces += 1;
        }
        inside = ok;
    }
    pieces
}
