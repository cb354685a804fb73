use std::f64::consts::PI;

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::linalg::Matrix2x2C;
use crate::specfun::airy;

const RAY_GAP: f64 = 1e-10;

/// Sectors of `ℂ ∖ Σ_A`, counterclockwise from the positive axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    I,
    II,
    III,
    IV,
}

/// The four rays of `Σ_A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ray {
    Positive,
    Upper,
    Negative,
    Lower,
}

impl Ray {
    pub const ALL: [Ray; 4] = [Ray::Positive, Ray::Upper, Ray::Negative, Ray::Lower];

    pub fn angle(self) -> f64 {
        match self {
            Ray::Positive => 0.0,
            Ray::Upper => 2.0 * PI / 3.0,
            Ray::Negative => PI,
            Ray::Lower => -2.0 * PI / 3.0,
        }
    }

    /// Sectors on the `+` and `−` side of the ray.
    pub fn sides(self) -> (Sector, Sector) {
        match self {
            Ray::Positive => (Sector::I, Sector::IV),
            Ray::Upper => (Sector::I, Sector::II),
            Ray::Negative => (Sector::II, Sector::III),
            Ray::Lower => (Sector::III, Sector::IV),
        }
    }

    /// Jump matrix `J` with `A₊ = A₋·J`.
    pub fn jump(self) -> Matrix2x2C {
        let (o, l) = (C::new(0.0, 0.0), C::new(1.0, 0.0));
        match self {
            Ray::Positive => Matrix2x2C::new(l, l, o, l),
            Ray::Upper | Ray::Lower => Matrix2x2C::new(l, o, l, l),
            Ray::Negative => Matrix2x2C::new(o, l, -l, o),
        }
    }
}

pub(crate) fn max_norm(m: &Matrix2x2C) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// `y_k(z) = ω^k Ai(ω^k z)` and derivatives, `ω = e^{2πi/3}`.
pub fn airy_branches(z: C) -> Result<[(C, C); 3]> {
    let w = C::from_polar(1.0, 2.0 * PI / 3.0);
    let w2 = w * w;
    let p0 = airy(z)?;
    let p1 = airy(w * z)?;
    let p2 = airy(w2 * z)?;
    Ok([
        (p0.value, p0.derivative),
        (w * p1.value, w2 * p1.derivative),
        (w2 * p2.value, w * p2.derivative),
    ])
}

/// The sector formula of the Airy model solution, continued analytically to any `z`.
pub fn airy_model_in(z: C, sector: Sector) -> Result<Matrix2x2C> {
    let [(y0, d0), (y1, d1), (y2, d2)] = airy_branches(z)?;
    let i = C::i();
    let m = match sector {
        Sector::I => Matrix2x2C::new(y0, -y2, -i * d0, i * d2),
        Sector::II => Matrix2x2C::new(-y1, -y2, i * d1, i * d2),
        Sector::III => Matrix2x2C::new(-y2, y1, i * d2, -i * d1),
        Sector::IV => Matrix2x2C::new(y0, y1, -i * d0, -i * d1),
    };
    Ok(m * C::new((2.0 * PI).sqrt(), 0.0))
}

pub fn sector_of(z: C) -> Result<Sector> {
    for ray in Ray::ALL {
        let dir = C::from_polar(1.0, ray.angle());
        let along = (z * dir.conj()).re;
        let dist = if along > 0.0 {
            (z * dir.conj()).im.abs()
        } else {
            z.norm()
        };
        if dist < RAY_GAP {
            return Err(Error::ContourProximity(format!(
                "{z} lies on the Airy contour"
            )));
        }
    }
    let t = z.arg();
    Ok(if t > 2.0 * PI / 3.0 {
        Sector::II
    } else if t > 0.0 {
        Sector::I
    } else if t > -2.0 * PI / 3.0 {
        Sector::IV
    } else {
        Sector::III
    })
}

/// Airy model solution `A(z)`.
pub fn airy_model(z: C) -> Result<Matrix2x2C> {
    airy_model_in(z, sector_of(z)?)
}

/// `‖A₊ − A₋J‖` at the point of `ray` at distance `r` from the origin.
pub fn airy_jump_residual(ray: Ray, r: f64) -> Result<f64> {
    let z = C::from_polar(r, ray.angle());
    let (plus, minus) = ray.sides();
    let ap = airy_model_in(z, plus)?;
    let am = airy_model_in(z, minus)?;
    Ok(max_norm(&(ap - am * ray.jump())))
}

/// Sector of `z`, or the `+` side when `z` lies on a ray.
fn sector_or_plus_side(z: C) -> Result<Sector> {
    match sector_of(z) {
        Ok(s) => Ok(s),
        Err(e) => {
            let t = z.arg();
            Ray::ALL
                .into_iter()
                .find(|r| {
                    (t - r.angle()).abs() < 1e-9 || (r.angle() == PI && (t + PI).abs() < 1e-9)
                })
                .filter(|_| z.norm() > 0.0)
                .map(|r| r.sides().0)
                .ok_or(e)
        }
    }
}

/// `‖L(z)^{−1}·A(z)·e^{(2/3)z^{3/2}σ₃} − I‖` with `L = z^{−σ₃/4}·[[1, i], [i, 1]]/√2`;
/// on a ray the `+` boundary value is used.
pub fn airy_asymptotic_residual(z: C) -> Result<f64> {
    let a = airy_model_in(z, sector_or_plus_side(z)?)?;
    let q = z.powf(0.25);
    let e = (2.0 / 3.0) * z * z.sqrt();
    let i = C::i();
    let s = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let n_inv = Matrix2x2C::new(s, -i * s, -i * s, s);
    let d_inv = Matrix2x2C::new(q, C::new(0.0, 0.0), C::new(0.0, 0.0), 1.0 / q);
    let right = Matrix2x2C::new(e.exp(), C::new(0.0, 0.0), C::new(0.0, 0.0), (-e).exp());
    let x = n_inv * d_inv * a * right;
    Ok(max_norm(&(x - Matrix2x2C::identity())))
}

/// `A₊` on the real line: sector I from above on `x ≥ 0`, sector II on `x < 0`.
fn a_plus(x: f64) -> Result<Matrix2x2C> {
    airy_model_in(
        C::new(x, 0.0),
        if x >= 0.0 { Sector::I } else { Sector::II },
    )
}

/// Airy kernel rebuilt from the boundary values of the model solution.
pub fn edge_kernel_from_a(x: f64, y: f64) -> Result<f64> {
    let (x, y) = if (x - y).abs() < 1e-7 {
        (x - 5e-6, x + 5e-6)
    } else {
        (x, y)
    };
    let (o, l) = (C::new(0.0, 0.0), C::new(1.0, 0.0));
    let row = if y >= 0.0 { [o, l] } else { [-l, l] };
    let col = if x >= 0.0 { [l, o] } else { [l, l] };
    let ay = a_plus(y)?;
    let inv = ay
        .try_inverse()
        .ok_or_else(|| Error::Range("singular A₊".into()))?;
    let prod = inv * a_plus(x)?;
    let mut s = C::new(0.0, 0.0);
    for (i, r) in row.iter().enumerate() {
        for (j, c) in col.iter().enumerate() {
            s += r * prod[(i, j)] * c;
        }
    }
    Ok((s / (2.0 * PI * C::i() * (x - y))).re)
}
