use std::f64::consts::PI;

use num_complex::Complex64 as C;

use super::airy_model::{airy_model, max_norm};
use super::cut::Cut;
use crate::equilibrium::EquilibriumMeasure;
use crate::error::{Error, Result};
use crate::linalg::Matrix2x2C;

const CUT_GAP: f64 = 1e-10;
const LIP_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiVariant {
    /// Based at the right endpoint `b`.
    Right,
    /// Based at the left endpoint `a`.
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Left,
    Right,
}

/// Immutable data for the steepest-descent analysis at degree `n` (with `N = n`).
#[derive(Debug, Clone)]
pub struct DescentContext {
    pub measure: EquilibriumMeasure,
    pub n: usize,
    pub delta: f64,
    pub lens_height: f64,
    cut: Cut,
}

impl DescentContext {
    /// Context with disk radius `delta`; the lens is shrunk until `Re φ < 0` on its lips.
    pub fn new(measure: EquilibriumMeasure, n: usize, delta: f64) -> Result<Self> {
        if measure.potential.hard_edge {
            return Err(Error::Invalid(
                "steepest descent is implemented for soft edges only".into(),
            ));
        }
        let (a, b) = measure.support;
        if !(delta > 0.0 && delta < (b - a) / 4.0) {
            return Err(Error::Invalid(format!(
                "delta must lie in (0, {}), got {delta}",
                (b - a) / 4.0
            )));
        }
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        let cut = Cut {
            a,
            b,
            h: measure.h.clone(),
        };
        let mut ctx = Self {
            measure,
            n,
            delta,
            lens_height: 0.5,
            cut,
        };
        for _ in 0..20 {
            if ctx.lips_are_decaying()? {
                return Ok(ctx);
            }
            ctx.lens_height *= 0.5;
        }
        Err(Error::NonConvergence(
            "no lens height with Re φ < 0 on the lips".into(),
        ))
    }

    /// Point of the upper (`sign = 1`) or lower lip at parameter `t ∈ (0, 1)`.
    pub fn lip(&self, t: f64, sign: f64) -> C {
        let (a, b) = (self.cut.a, self.cut.b);
        let x = a + (b - a) * t;
        let bump = 4.0 * t * (1.0 - t);
        C::new(x, sign * self.lens_height * 0.5 * (b - a) * bump)
    }

    fn lips_are_decaying(&self) -> Result<bool> {
        for j in 1..=LIP_SAMPLES {
            let t = j as f64 / (LIP_SAMPLES + 1) as f64;
            for sign in [1.0, -1.0] {
                if self.phi(self.lip(t, sign), PhiVariant::Right)?.re >= 0.0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.cut.a, self.cut.b)
    }

    /// `g(z) = ∫ log(z − x) dμ(x)`, principal branch, cut on `(−∞, b]`.
    pub fn g_function(&self, z: C) -> Result<C> {
        let b = self.cut.b;
        let dist = if z.re <= b {
            z.im.abs()
        } else {
            (z - b).norm()
        };
        if dist < CUT_GAP {
            return Err(Error::ContourProximity(format!(
                "g evaluated within {CUT_GAP:e} of its cut at {z}"
            )));
        }
        Ok(self.measure.log_transform(z))
    }

    pub fn phi(&self, z: C, variant: PhiVariant) -> Result<C> {
        match variant {
            PhiVariant::Right => self.cut.phi(z),
            PhiVariant::Left => self.cut.phi_tilde(z),
        }
    }

    /// `φ₊(x) = −πi·μ([x, b])` on the support.
    pub fn phi_plus(&self, x: f64) -> C {
        C::new(0.0, -PI * self.measure.upper_mass(x))
    }

    pub fn outer_parametrix(&self, z: C) -> Result<Matrix2x2C> {
        self.cut.outer(z)
    }

    pub fn conformal_f(&self, z: C) -> Result<C> {
        self.cut.conformal_f(z)
    }

    /// `E_n(z) = M(z)·[[1, −i], [−i, 1]]/√2·(n^{2/3} f(z))^{σ₃/4}` near `b`.
    pub fn prefactor(&self, z: C) -> Result<Matrix2x2C> {
        prefactor_for(&self.cut, self.n, z)
    }

    /// Local parametrix `P = E_n·A(n^{2/3} f)·e^{nφσ₃}` in the disk around an endpoint.
    pub fn local_parametrix(&self, z: C, at: Endpoint) -> Result<Matrix2x2C> {
        let (a, b) = (self.cut.a, self.cut.b);
        let centre = if at == Endpoint::Right { b } else { a };
        if (z - centre).norm() >= self.delta {
            return Err(Error::Domain(format!(
                "{z} is outside the disk of radius {} around {centre}",
                self.delta
            )));
        }
        match at {
            Endpoint::Right => parametrix_for(&self.cut, self.n, z),
            Endpoint::Left => {
                // Mirror the right-endpoint construction: P(z) = σ₃·P̂(a + b − z)·σ₃.
                let mirrored = self.cut.reflected();
                let p = parametrix_for(&mirrored, self.n, a + b - z)?;
                Ok(sigma3_conj(&p))
            }
        }
    }

    /// `sup ‖P·M^{−1} − I‖` over `points` equally spaced points of the disk boundary.
    pub fn matching_error(&self, at: Endpoint, points: usize) -> Result<f64> {
        let centre = if at == Endpoint::Right {
            self.cut.b
        } else {
            self.cut.a
        };
        let r = self.delta * (1.0 - 1e-12);
        let mut worst = 0.0f64;
        for j in 0..points {
            let th = 2.0 * PI * (j as f64 + 0.5) / points as f64;
            let z = centre + C::from_polar(r, th);
            let p = self.local_parametrix(z, at)?;
            let m = self.outer_parametrix(z)?;
            let minv = m
                .try_inverse()
                .ok_or_else(|| Error::Range("singular M".into()))?;
            worst = worst.max(max_norm(&(p * minv - Matrix2x2C::identity())));
        }
        Ok(worst)
    }

    /// `sin(i·n·(φ₊(y) − φ₊(x)))/(π(x − y))`, with diagonal `n·ρ(x)`.
    pub fn bulk_kernel_approx(&self, x: f64, y: f64) -> f64 {
        if (x - y).abs() < 1e-9 * (1.0 + x.abs()) {
            return self.n as f64 * self.measure.density_h(x);
        }
        let arg = C::i() * self.n as f64 * (self.phi_plus(y) - self.phi_plus(x));
        (arg.sin() / (PI * (x - y))).re
    }

    /// `T`-jump on the support and its lens factorisation, lower·middle·upper.
    pub fn t_jump_and_factorisation(&self, x: f64) -> (Matrix2x2C, Matrix2x2C) {
        let n = self.n as f64;
        let ep = (2.0 * n * self.phi_plus(x)).exp();
        let em = (-2.0 * n * self.phi_plus(x)).exp();
        let (o, l) = (C::new(0.0, 0.0), C::new(1.0, 0.0));
        let jt = Matrix2x2C::new(ep, l, o, em);
        let lower = Matrix2x2C::new(l, o, em, l);
        let middle = Matrix2x2C::new(o, l, -l, o);
        let upper = Matrix2x2C::new(l, o, ep, l);
        (jt, lower * middle * upper)
    }

    /// Leading-order limits `(a_∞, b_∞)` of the recurrence coefficients from
    /// the Laurent coefficients `M₁, M₂` of `M` at infinity.
    pub fn asymptotic_recurrence(&self) -> Result<(f64, f64)> {
        let (a, b) = (self.cut.a, self.cut.b);
        let radius = 2.0 * a.abs().max(b.abs()) + 1.0;
        let k = 256;
        let mut m1 = Matrix2x2C::zeros();
        let mut m2 = Matrix2x2C::zeros();
        for j in 0..k {
            let w = C::from_polar(1.0, 2.0 * PI * j as f64 / k as f64);
            let z = radius * w;
            let m = self.outer_parametrix(z)? - Matrix2x2C::identity();
            // Coefficient of z^{−k}: (1/K)Σ M(z_j)·z_j^k.
            m1 += m * (z / k as f64);
            m2 += m * (z * z / k as f64);
        }
        let a_inf = (m1[(0, 1)] * m1[(1, 0)]).re;
        let b_inf = (m2[(0, 1)] / m1[(0, 1)] - m1[(1, 1)]).re;
        Ok((a_inf, b_inf))
    }
}

fn sigma3_conj(p: &Matrix2x2C) -> Matrix2x2C {
    Matrix2x2C::new(p[(0, 0)], -p[(0, 1)], -p[(1, 0)], p[(1, 1)])
}

fn prefactor_for(cut: &Cut, n: usize, z: C) -> Result<Matrix2x2C> {
    let m = cut.outer(z)?;
    let zeta = (n as f64).powf(2.0 / 3.0) * cut.conformal_f(z)?;
    let q = zeta.powf(0.25);
    let i = C::i();
    let s = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mid = Matrix2x2C::new(s, -i * s, -i * s, s);
    let d = Matrix2x2C::new(q, C::new(0.0, 0.0), C::new(0.0, 0.0), 1.0 / q);
    Ok(m * mid * d)
}

fn parametrix_for(cut: &Cut, n: usize, z: C) -> Result<Matrix2x2C> {
    let e = prefactor_for(cut, n, z)?;
    let zeta = (n as f64).powf(2.0 / 3.0) * cut.conformal_f(z)?;
    let a = airy_model(zeta)?;
    let nphi = n as f64 * cut.phi(z)?;
    let right = Matrix2x2C::new(
        nphi.exp(),
        C::new(0.0, 0.0),
        C::new(0.0, 0.0),
        (-nphi).exp(),
    );
    Ok(e * a * right)
}

#[cfg(test)]
pub(crate) fn parametrix_sides(
    ctx: &DescentContext,
    x: f64,
    eps: f64,
) -> Result<(Matrix2x2C, Matrix2x2C)> {
    let up = parametrix_for(&ctx.cut, ctx.n, C::new(x, eps))?;
    let down = parametrix_for(&ctx.cut, ctx.n, C::new(x, -eps))?;
    Ok((up, down))
}
