use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Potential;
use crate::error::{Error, Result};
use crate::poly;

/// The trial function `q(x) = poly(x) − pole/x` built from a moment vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QFunction {
    pub poly: Vec<f64>,
    pub pole: f64,
}

impl QFunction {
    /// `(V'/2)² − ∫ (V'(x) − V'(s))/(x − s) dμ(s)`, minus `(1/x)∫V' dμ` with a hard edge.
    pub fn from_moments(v: &Potential, moments: &[f64]) -> Self {
        let w = v.derivative_coefficients();
        let mut q = poly::scale(&poly::mul(&w, &w), 0.25);
        for (m, &wm) in w.iter().enumerate().skip(1) {
            for i in 0..m {
                q[i] -= wm * moments[m - 1 - i];
            }
        }
        let pole = if v.hard_edge {
            w.iter().zip(moments).map(|(a, b)| a * b).sum::<f64>()
        } else {
            0.0
        };
        Self { poly: q, pole }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let p = poly::eval(&self.poly, x);
        if self.pole != 0.0 {
            p - self.pole / x
        } else {
            p
        }
    }

    /// `x·q(x)` as a polynomial.
    fn times_x(&self) -> Vec<f64> {
        let mut out = vec![-self.pole];
        out.extend_from_slice(&self.poly);
        out
    }

    fn scan_range(&self, hard_edge: bool) -> (f64, f64) {
        if hard_edge {
            (0.0, poly::root_bound(&self.times_x()))
        } else {
            let r = poly::root_bound(&self.poly);
            (-r, r)
        }
    }

    /// Maximal intervals where `q < 0`; gaps on which `q` never exceeds
    /// `merge_tol` are absorbed into a single interval.
    pub fn negativity_intervals(&self, hard_edge: bool, merge_tol: f64) -> Vec<(f64, f64)> {
        const SAMPLES: usize = 10_000;
        let (lo, hi) = self.scan_range(hard_edge);
        let xs: Vec<f64> = (0..=SAMPLES)
            .map(|i| lo + (hi - lo) * i as f64 / SAMPLES as f64)
            .collect();
        let neg = |x: f64| -> bool {
            if hard_edge && x == 0.0 {
                self.pole > 0.0 || (self.pole == 0.0 && poly::eval(&self.poly, 0.0) < 0.0)
            } else {
                self.eval(x) < 0.0
            }
        };
        let flags: Vec<bool> = xs.iter().map(|&x| neg(x)).collect();
        let f = |x: f64| self.eval(x);
        let mut raw = Vec::new();
        let mut start: Option<f64> = None;
        for i in 0..=SAMPLES {
            match (flags[i], start) {
                (true, None) => {
                    start = Some(if i == 0 {
                        xs[0]
                    } else {
                        poly::bisect(f, xs[i - 1], xs[i])
                    });
                }
                (false, Some(s)) => {
                    raw.push((s, poly::bisect(f, xs[i - 1], xs[i])));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            raw.push((s, hi));
        }
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (a, b) in raw {
            if let Some(last) = merged.last_mut() {
                let gap_max = (0..=64)
                    .map(|k| self.eval(last.1 + (a - last.1) * k as f64 / 64.0))
                    .fold(f64::NEG_INFINITY, f64::max);
                if gap_max <= merge_tol {
                    last.1 = b;
                    continue;
                }
            }
            merged.push((a, b));
        }
        merged
    }

    /// Moments `∫ x^k (1/π)√(q⁻) dx`, k < count, over `[a, b]` with `x = c − r cos t`.
    pub fn moments_over(&self, a: f64, b: f64, count: usize, nodes: usize) -> Vec<f64> {
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        let mut m = vec![0.0; count];
        for j in 0..nodes {
            let t = (j as f64 + 0.5) * PI / nodes as f64;
            let x = c - r * t.cos();
            let rho = (-self.eval(x)).max(0.0).sqrt() / PI;
            let w = PI / nodes as f64 * r * t.sin() * rho;
            let mut p = 1.0;
            for mk in m.iter_mut() {
                *mk += w * p;
                p *= x;
            }
        }
        m
    }
}

/// One-cut equilibrium measure of a polynomial external field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumMeasure {
    pub potential: Potential,
    pub support: (f64, f64),
    /// Density factor: `ρ = h(x)√((b−x)(x−a))/π`, or `h(x)√((b−x)/x)/π` at a hard edge.
    pub h: Vec<f64>,
    pub moments: Vec<f64>,
    pub ell: f64,
    pub q: QFunction,
    /// `c_k = ∫ cos kθ dμ` with `x = (a+b)/2 + (b−a)/2 cos θ`.
    pub cosine_moments: Vec<f64>,
    pub iterations: usize,
}

impl EquilibriumMeasure {
    pub(crate) fn assemble(
        v: &Potential,
        moments: Vec<f64>,
        support: (f64, f64),
        iterations: usize,
    ) -> Self {
        let q = QFunction::from_moments(v, &moments);
        let (a, b) = support;
        let hard = v.hard_edge && q.pole > 0.0;
        let reduced = if hard {
            poly::deflate(&q.times_x(), b)
        } else {
            poly::deflate(&poly::deflate(&q.poly, a), b)
        };
        let mut h = poly::sqrt(&reduced);
        if poly::eval(&h, 0.5 * (a + b)) < 0.0 {
            h = poly::scale(&h, -1.0);
        }
        let mut mu = Self {
            potential: v.clone(),
            support,
            h,
            moments,
            ell: 0.0,
            q,
            cosine_moments: Vec::new(),
            iterations,
        };
        mu.cosine_moments = mu.compute_cosine_moments(v.degree() + 6, 1024);
        mu.ell = -2.0 * mu.log_potential(mu.center()) + v.value(mu.center());
        mu
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.support.0 + self.support.1)
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.support.1 - self.support.0)
    }

    fn hard(&self) -> bool {
        self.potential.hard_edge && self.q.pole > 0.0
    }

    /// `q_V(x)`; a domain error at the hard-edge pole.
    pub fn qv(&self, x: f64) -> Result<f64> {
        if self.q.pole != 0.0 && x == 0.0 {
            return Err(Error::Domain(
                "q_V has a pole at the hard edge x = 0".into(),
            ));
        }
        Ok(self.q.eval(x))
    }

    /// `(1/π)√(max(−q_V, 0))`; zero off the support and at the pole.
    pub fn density(&self, x: f64) -> f64 {
        if self.potential.hard_edge && x <= 0.0 {
            return 0.0;
        }
        (-self.q.eval(x)).max(0.0).sqrt() / PI
    }

    /// Density through the `h` factor; agrees with [`density`](Self::density) on the support.
    pub fn density_h(&self, x: f64) -> f64 {
        let (a, b) = self.support;
        if x <= a || x >= b {
            return 0.0;
        }
        let s = if self.hard() {
            ((b - x) / x).sqrt()
        } else {
            ((b - x) * (x - a)).sqrt()
        };
        poly::eval(&self.h, x) * s / PI
    }

    /// `ρ(c + r cos θ)·r sin θ`, a trigonometric polynomial in θ.
    fn density_in_angle(&self, theta: f64) -> f64 {
        let (c, r) = (self.center(), self.radius());
        let x = c + r * theta.cos();
        let factor = if self.hard() {
            r * (1.0 - theta.cos())
        } else {
            r * r * theta.sin().powi(2)
        };
        poly::eval(&self.h, x) * factor / PI
    }

    fn compute_cosine_moments(&self, count: usize, nodes: usize) -> Vec<f64> {
        let mut c = vec![0.0; count];
        for j in 0..nodes {
            let th = (j as f64 + 0.5) * PI / nodes as f64;
            let f = self.density_in_angle(th) * PI / nodes as f64;
            for (k, ck) in c.iter_mut().enumerate() {
                *ck += f * (k as f64 * th).cos();
            }
        }
        c
    }

    /// Total mass, `c_0`.
    pub fn mass(&self) -> f64 {
        self.cosine_moments[0]
    }

    /// Joukowski variable `t` with `|t| ≥ 1` for real `x`, as `(t, Log t)`.
    fn joukowski_real(&self, x: f64) -> (Complex64, Complex64) {
        let w = (x - self.center()) / self.radius();
        if w > 1.0 {
            let t = w + (w * w - 1.0).sqrt();
            (Complex64::new(t, 0.0), Complex64::new(t.ln(), 0.0))
        } else if w < -1.0 {
            let t = w - (w * w - 1.0).sqrt();
            (Complex64::new(t, 0.0), Complex64::new((-t).ln(), PI))
        } else {
            let phi = w.acos();
            (Complex64::from_polar(1.0, phi), Complex64::new(0.0, phi))
        }
    }

    /// `∫ log(z − s) dμ(s)`: analytic off `(−∞, b]`, with the `+` boundary value on the real axis.
    pub fn log_transform(&self, z: Complex64) -> Complex64 {
        let (t, log_t) = if z.im == 0.0 {
            self.joukowski_real(z.re)
        } else {
            let w = (z - self.center()) / self.radius();
            let t = w + (w - 1.0).sqrt() * (w + 1.0).sqrt();
            (t, t.ln())
        };
        let mut sum = Complex64::new(0.0, 0.0);
        let inv = 1.0 / t;
        let mut p = Complex64::new(1.0, 0.0);
        for (k, &ck) in self.cosine_moments.iter().enumerate().skip(1) {
            p *= inv;
            sum += p * (ck / k as f64);
        }
        (self.radius() / 2.0).ln() + log_t - 2.0 * sum
    }

    /// `U(x) = ∫ log|x − s| dμ(s)`.
    pub fn log_potential(&self, x: f64) -> f64 {
        self.log_transform(Complex64::new(x, 0.0)).re
    }

    /// `2∫ log(1/|x − s|) dμ(s) + V(x) − ℓ`.
    pub fn effective_potential(&self, x: f64) -> f64 {
        -2.0 * self.log_potential(x) + self.potential.value(x) - self.ell
    }

    /// `μ([x, b])`.
    pub fn upper_mass(&self, x: f64) -> f64 {
        let (a, b) = self.support;
        if x >= b {
            return 0.0;
        }
        if x <= a {
            return self.mass();
        }
        let phi = ((x - self.center()) / self.radius())
            .clamp(-1.0, 1.0)
            .acos();
        let mut s = self.cosine_moments[0] * phi;
        for (k, &ck) in self.cosine_moments.iter().enumerate().skip(1) {
            s += 2.0 * ck * (k as f64 * phi).sin() / k as f64;
        }
        s / PI
    }
}
