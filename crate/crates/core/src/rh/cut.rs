use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::linalg::Matrix2x2C;
use crate::poly;
use crate::quad::adaptive_complex;

/// Support `[a, b]` with density `h(x)√((b−x)(x−a))/π`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Cut {
    pub a: f64,
    pub b: f64,
    pub h: Vec<f64>,
}

fn h_at(h: &[f64], z: C) -> C {
    h.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
}

impl Cut {
    /// Mirror image under `x ↦ a + b − x`.
    pub fn reflected(&self) -> Cut {
        // h(a + b − x) expanded by Horner on polynomials.
        let shift = vec![self.a + self.b, -1.0];
        let mut out = vec![0.0];
        for &c in self.h.iter().rev() {
            out = poly::add(&poly::mul(&out, &shift), &[c]);
        }
        Cut {
            a: self.a,
            b: self.b,
            h: poly::trim(out),
        }
    }

    /// `∫_0^1 u² h(s)(s − c)^{1/2} du` with `s = e + (z − e)u²`; `e` is the base
    /// endpoint and `c` the other one.
    fn reduced(&self, z: C, base: f64, other: f64) -> Result<C> {
        let d = z - base;
        let f = |u: f64| {
            let s = base + d * (u * u);
            (u * u) * h_at(&self.h, s) * (s - other).sqrt()
        };
        adaptive_complex(f, 0.0, 1.0, 1e-15, 1e-13)
    }

    /// `φ(z) = ∫_b^z h(s)((s−b)(s−a))^{1/2} ds`.
    pub fn phi(&self, z: C) -> Result<C> {
        if z.im == 0.0 && z.re < self.a {
            return Err(Error::ContourProximity(format!(
                "φ path from b to {} crosses the support",
                z.re
            )));
        }
        let d = z - self.b;
        Ok(2.0 * d * d.sqrt() * self.reduced(z, self.b, self.a)?)
    }

    /// `φ̃(z) = ∫_a^z h(s)((s−b)(s−a))^{1/2} ds`.
    pub fn phi_tilde(&self, z: C) -> Result<C> {
        if z.im == 0.0 && z.re > self.b {
            return Err(Error::ContourProximity(format!(
                "φ̃ path from a to {} crosses the support",
                z.re
            )));
        }
        let d = z - self.a;
        // (s − b)^{1/2} must follow the side of the path, so keep a signed zero.
        let other = self.b;
        let base = self.a;
        let f = |u: f64| {
            let s = base + d * (u * u);
            let t = s - other;
            let t = if t.im == 0.0 {
                C::new(t.re, if z.im < 0.0 { -0.0 } else { 0.0 })
            } else {
                t
            };
            (u * u) * h_at(&self.h, s) * t.sqrt()
        };
        let r = adaptive_complex(f, 0.0, 1.0, 1e-15, 1e-13)?;
        Ok(2.0 * d * d.sqrt() * r)
    }

    /// Conformal map `f = ((3/2)φ)^{2/3}` near `b`, positive on `(b, ∞)`.
    pub fn conformal_f(&self, z: C) -> Result<C> {
        let r = self.reduced(z, self.b, self.a)?;
        Ok((z - self.b) * (3.0 * r).powf(2.0 / 3.0))
    }

    /// `β(z) = ((z − b)/(z − a))^{1/4}`, cut on `[a, b]`.
    pub fn beta(&self, z: C) -> C {
        (z - self.b).powf(0.25) / (z - self.a).powf(0.25)
    }

    /// Outer parametrix `M(z)`.
    pub fn outer(&self, z: C) -> Result<Matrix2x2C> {
        if z.im == 0.0 && z.re >= self.a && z.re <= self.b {
            return Err(Error::ContourProximity(format!(
                "M evaluated on its cut at {}",
                z.re
            )));
        }
        Ok(outer_from_beta(self.beta(z)))
    }
}

pub(crate) fn outer_from_beta(beta: C) -> Matrix2x2C {
    let i = C::i();
    let inv = 1.0 / beta;
    let p = (beta + inv) / 2.0;
    let m = (beta - inv) / (2.0 * i);
    Matrix2x2C::new(p, m, -m, p)
}
