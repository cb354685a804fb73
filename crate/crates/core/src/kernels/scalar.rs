use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{airy_real, bessel_j};

/// `sin(πu)/(πu)`.
pub fn sinc(u: f64) -> f64 {
    let t = PI * u;
    if u.abs() < 1e-8 {
        let t2 = t * t;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        t.sin() / t
    }
}

/// Derivative of [`sinc`] with respect to `u`.
pub fn sinc_derivative(u: f64) -> f64 {
    let t = PI * u;
    if u.abs() < 1e-3 {
        let t2 = t * t;
        PI * (-t / 3.0 + t * t2 / 30.0 - t * t2 * t2 / 840.0)
    } else {
        (t * t.cos() - t.sin()) / (PI * u * u)
    }
}

/// Sine kernel.
pub fn sine_kernel(x: f64, y: f64) -> f64 {
    sinc(x - y)
}

/// Taylor coefficients of Ai about `x`, given Ai(x) and Ai'(x).
pub(crate) fn airy_taylor(x: f64, a0: f64, a1: f64, len: usize) -> Vec<f64> {
    let mut a = vec![0.0; len.max(2)];
    a[0] = a0;
    a[1] = a1;
    for k in 0..len.saturating_sub(2) {
        let prev = if k == 0 { 0.0 } else { a[k - 1] };
        a[k + 2] = (x * a[k] + prev) / (((k + 2) * (k + 1)) as f64);
    }
    a
}

/// Below this separation the Airy kernel and its y-partial use the Taylor
/// expansion of Ai about x instead of the quotient.
pub(crate) const AIRY_SERIES_GAP: f64 = 0.25;
const AIRY_TERMS: usize = 44;

/// `K(x, x+d)` and `∂_y K(x, x+d)` from the Taylor data of Ai at x.
pub(crate) fn airy_kernel_series(x: f64, ax: f64, dax: f64, d: f64) -> (f64, f64) {
    let a = airy_taylor(x, ax, dax, AIRY_TERMS + 2);
    let mut k = 0.0;
    let mut dk = 0.0;
    let mut pw = 1.0;
    let mut pw_prev = 0.0;
    for m in 1..=AIRY_TERMS {
        let c = (m + 1) as f64 * ax * a[m + 1] - dax * a[m];
        k -= c * pw;
        if m >= 2 {
            dk -= (m - 1) as f64 * c * pw_prev;
        }
        pw_prev = pw;
        pw *= d;
    }
    (k, dk)
}

/// Airy kernel from precomputed `(Ai, Ai')` at both arguments.
pub(crate) fn airy_kernel_from(x: f64, y: f64, ax: (f64, f64), ay: (f64, f64)) -> f64 {
    let d = y - x;
    if d.abs() < AIRY_SERIES_GAP {
        airy_kernel_series(x, ax.0, ax.1, d).0
    } else {
        (ax.0 * ay.1 - ax.1 * ay.0) / (x - y)
    }
}

pub(crate) fn ai(x: f64) -> Result<(f64, f64)> {
    let p = airy_real(x)?;
    Ok((p.value, p.derivative))
}

/// Airy kernel `(Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y)`.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    let ax = ai(x)?;
    let ay = ai(y)?;
    // Expand about the smaller argument so swapping x and y is exact.
    if y < x {
        Ok(airy_kernel_from(y, x, ay, ax))
    } else {
        Ok(airy_kernel_from(x, y, ax, ay))
    }
}

/// `∂K^Ai/∂y (x, y)`.
pub fn airy_kernel_dy(x: f64, y: f64) -> Result<f64> {
    let ax = ai(x)?;
    let ay = ai(y)?;
    let d = y - x;
    if d.abs() < AIRY_SERIES_GAP {
        return Ok(airy_kernel_series(x, ax.0, ax.1, d).1);
    }
    let n = ax.0 * ay.1 - ax.1 * ay.0;
    let dn = ax.0 * y * ay.0 - ax.1 * ay.1;
    Ok(dn / (x - y) + n / ((x - y) * (x - y)))
}

fn require_positive(name: &str, x: f64, y: f64) -> Result<()> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "{name}: arguments must be positive, got ({x}, {y})"
        )));
    }
    Ok(())
}

/// Hard-edge Bessel kernel of order α.
pub fn bessel_hard_kernel(alpha: f64, x: f64, y: f64) -> Result<f64> {
    require_positive("bessel_hard_kernel", x, y)?;
    let (u, v) = (x.sqrt(), y.sqrt());
    let jx = bessel_j(alpha, u)?;
    if (x - y).abs() < 1e-6 * (1.0 + x) {
        let ratio = alpha / u;
        return Ok(
            0.25 * (jx.derivative * jx.derivative + (1.0 - ratio * ratio) * jx.value * jx.value)
        );
    }
    let jy = bessel_j(alpha, v)?;
    Ok((jx.value * v * jy.derivative - u * jx.derivative * jy.value) / (2.0 * (x - y)))
}

/// Bessel kernel at the origin for a spectral singularity of order α.
pub fn bessel_origin_kernel(alpha: f64, x: f64, y: f64) -> Result<f64> {
    require_positive("bessel_origin_kernel", x, y)?;
    if !(alpha > -0.5) {
        return Err(Error::Domain(format!(
            "bessel_origin_kernel: order {alpha} must exceed -1/2"
        )));
    }
    let px = bessel_j(alpha + 0.5, PI * x)?;
    let mx = bessel_j(alpha - 0.5, PI * x)?;
    if (x - y).abs() < 1e-6 * (1.0 + x) {
        let wronskian = PI * (px.derivative * mx.value - mx.derivative * px.value);
        return Ok(0.5 * PI * x * wronskian);
    }
    let py = bessel_j(alpha + 0.5, PI * y)?;
    let my = bessel_j(alpha - 0.5, PI * y)?;
    let num = px.value * my.value - mx.value * py.value;
    Ok(PI * (x * y).sqrt() * num / (2.0 * (x - y)))
}
