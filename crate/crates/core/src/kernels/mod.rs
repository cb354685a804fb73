//! Universal limiting kernels and determinant / Pfaffian correlation
//! assembly.

mod matrix;
mod pearcey;
mod scalar;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det, pfaffian, skew_defect};

pub use matrix::{
    airy_kernel_integral, matrix_kernel_bulk, matrix_kernel_edge, Beta, MatrixKernelValue,
};
pub use pearcey::{
    pearcey_kernel, pearcey_kernel_ode_form, pearcey_kernel_on, pearcey_p, pearcey_p_residual,
    pearcey_q, PearceyContour,
};
pub use scalar::{
    airy_kernel, airy_kernel_dy, bessel_hard_kernel, bessel_origin_kernel, sinc, sinc_derivative,
    sine_kernel,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelFamily {
    Sine,
    Airy,
    BesselHard,
    BesselOrigin,
    Pearcey,
    SineBeta1,
    SineBeta4,
    AiryBeta1,
    AiryBeta4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Arity {
    Scalar,
    Matrix2x2,
}

impl KernelFamily {
    pub fn arity(self) -> Arity {
        match self {
            KernelFamily::Sine
            | KernelFamily::Airy
            | KernelFamily::BesselHard
            | KernelFamily::BesselOrigin
            | KernelFamily::Pearcey => Arity::Scalar,
            _ => Arity::Matrix2x2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::Sine => "sine",
            KernelFamily::Airy => "airy",
            KernelFamily::BesselHard => "bessel-hard",
            KernelFamily::BesselOrigin => "bessel-origin",
            KernelFamily::Pearcey => "pearcey",
            KernelFamily::SineBeta1 => "sine-beta1",
            KernelFamily::SineBeta4 => "sine-beta4",
            KernelFamily::AiryBeta1 => "airy-beta1",
            KernelFamily::AiryBeta4 => "airy-beta4",
        }
    }
}

impl FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use KernelFamily::*;
        [
            Sine,
            Airy,
            BesselHard,
            BesselOrigin,
            Pearcey,
            SineBeta1,
            SineBeta4,
            AiryBeta1,
            AiryBeta4,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::Invalid(format!("unknown kernel family '{s}'")))
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A universal kernel together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelHandle {
    pub family: KernelFamily,
    pub alpha: Option<f64>,
    pub s: Option<f64>,
}

/// Value of a kernel at one point pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelValue {
    Scalar(f64),
    Matrix(MatrixKernelValue),
}

impl KernelHandle {
    /// Builds a handle, checking that exactly the parameters the family uses are present.
    pub fn new(family: KernelFamily, alpha: Option<f64>, s: Option<f64>) -> Result<Self> {
        use KernelFamily::*;
        let needs_alpha = matches!(family, BesselHard | BesselOrigin);
        let needs_s = family == Pearcey;
        if needs_alpha != alpha.is_some() {
            return Err(Error::Invalid(format!(
                "kernel {family}: alpha must be {}",
                if needs_alpha { "given" } else { "absent" }
            )));
        }
        if needs_s != s.is_some() {
            return Err(Error::Invalid(format!(
                "kernel {family}: s must be {}",
                if needs_s { "given" } else { "absent" }
            )));
        }
        match (family, alpha) {
            (BesselHard, Some(a)) if !(a > -1.0) => {
                return Err(Error::Domain(format!(
                    "hard-edge Bessel order {a} must exceed -1"
                )))
            }
            (BesselOrigin, Some(a)) if !(a > -0.5) => {
                return Err(Error::Domain(format!(
                    "origin Bessel order {a} must exceed -1/2"
                )))
            }
            _ => {}
        }
        Ok(Self { family, alpha, s })
    }

    pub fn sine() -> Self {
        Self {
            family: KernelFamily::Sine,
            alpha: None,
            s: None,
        }
    }

    pub fn airy() -> Self {
        Self {
            family: KernelFamily::Airy,
            alpha: None,
            s: None,
        }
    }

    pub fn bessel_hard(alpha: f64) -> Result<Self> {
        Self::new(KernelFamily::BesselHard, Some(alpha), None)
    }

    pub fn bessel_origin(alpha: f64) -> Result<Self> {
        Self::new(KernelFamily::BesselOrigin, Some(alpha), None)
    }

    pub fn pearcey(s: f64) -> Self {
        Self {
            family: KernelFamily::Pearcey,
            alpha: None,
            s: Some(s),
        }
    }

    pub fn sine_beta(beta: Beta) -> Self {
        let family = match beta {
            Beta::One => KernelFamily::SineBeta1,
            Beta::Four => KernelFamily::SineBeta4,
        };
        Self {
            family,
            alpha: None,
            s: None,
        }
    }

    pub fn airy_beta(beta: Beta) -> Self {
        let family = match beta {
            Beta::One => KernelFamily::AiryBeta1,
            Beta::Four => KernelFamily::AiryBeta4,
        };
        Self {
            family,
            alpha: None,
            s: None,
        }
    }

    pub fn arity(&self) -> Arity {
        self.family.arity()
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<KernelValue> {
        use KernelFamily::*;
        let alpha = self.alpha.unwrap_or(0.0);
        Ok(match self.family {
            Sine => KernelValue::Scalar(sine_kernel(x, y)),
            Airy => KernelValue::Scalar(airy_kernel(x, y)?),
            BesselHard => KernelValue::Scalar(bessel_hard_kernel(alpha, x, y)?),
            BesselOrigin => KernelValue::Scalar(bessel_origin_kernel(alpha, x, y)?),
            Pearcey => KernelValue::Scalar(pearcey_kernel(x, y, self.s.unwrap_or(0.0))?),
            SineBeta1 => KernelValue::Matrix(matrix_kernel_bulk(Beta::One, x, y)),
            SineBeta4 => KernelValue::Matrix(matrix_kernel_bulk(Beta::Four, x, y)),
            AiryBeta1 => KernelValue::Matrix(matrix_kernel_edge(Beta::One, x, y)?),
            AiryBeta4 => KernelValue::Matrix(matrix_kernel_edge(Beta::Four, x, y)?),
        })
    }

    pub fn eval_scalar(&self, x: f64, y: f64) -> Result<f64> {
        match self.eval(x, y)? {
            KernelValue::Scalar(v) => Ok(v),
            KernelValue::Matrix(_) => Err(Error::Invalid(format!(
                "{} is a matrix kernel",
                self.family
            ))),
        }
    }

    pub fn eval_matrix(&self, x: f64, y: f64) -> Result<MatrixKernelValue> {
        match self.eval(x, y)? {
            KernelValue::Matrix(m) => Ok(m),
            KernelValue::Scalar(_) => Err(Error::Invalid(format!(
                "{} is a scalar kernel",
                self.family
            ))),
        }
    }
}

/// `det [K(x_i, x_j)]` for a scalar kernel and 1 ≤ k ≤ 12 points.
pub fn correlation_det(kernel: &KernelHandle, points: &[f64]) -> Result<f64> {
    if kernel.arity() != Arity::Scalar {
        return Err(Error::Invalid(format!(
            "correlation_det needs a scalar kernel, got {}",
            kernel.family
        )));
    }
    let k = points.len();
    if !(1..=12).contains(&k) {
        return Err(Error::Invalid(format!(
            "correlation_det takes 1 to 12 points, got {k}"
        )));
    }
    let mut m = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = kernel.eval_scalar(points[i], points[j])?;
        }
    }
    Ok(det(&m))
}

/// The 2k×2k block matrix `[K(x_i, x_j)]` of a matrix kernel.
pub fn assemble_blocks(kernel: &KernelHandle, points: &[f64]) -> Result<DMatrix<f64>> {
    let k = points.len();
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            let v = kernel.eval_matrix(points[i], points[j])?;
            for a in 0..2 {
                for b in 0..2 {
                    m[(2 * i + a, 2 * j + b)] = v.entries[a][b];
                }
            }
        }
    }
    Ok(m)
}

/// `Pf [K(x_i, x_j)]` for a matrix kernel and 1 ≤ k ≤ 8 points.
pub fn correlation_pfaffian(kernel: &KernelHandle, points: &[f64]) -> Result<f64> {
    if kernel.arity() != Arity::Matrix2x2 {
        return Err(Error::Invalid(format!(
            "correlation_pfaffian needs a matrix kernel, got {}",
            kernel.family
        )));
    }
    let k = points.len();
    if !(1..=8).contains(&k) {
        return Err(Error::Invalid(format!(
            "correlation_pfaffian takes 1 to 8 points, got {k}"
        )));
    }
    let m = assemble_blocks(kernel, points)?;
    let defect = skew_defect(&m);
    if defect > 1e-8 {
        return Err(Error::Assembly(defect));
    }
    pfaffian(&m)
}

#[cfg(test)]
mod tests;
