use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Polynomial external field `V`, optionally confined to `[0, ∞)`.
///
/// `singularity_alpha` is the exponent of the algebraic factor of the weight:
/// `x^α` with a hard edge, `|x|^{2α}` otherwise. It never changes the
/// equilibrium measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    pub coefficients: Vec<f64>,
    pub hard_edge: bool,
    pub singularity_alpha: f64,
}

impl Potential {
    pub fn new(coefficients: Vec<f64>, hard_edge: bool, singularity_alpha: f64) -> Result<Self> {
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::Invalid(
                "potential coefficients must be finite".into(),
            ));
        }
        let coefficients = poly::trim(coefficients);
        let deg = poly::degree(&coefficients).unwrap_or(0);
        let lead = coefficients[deg];
        if hard_edge {
            if deg < 1 || lead <= 0.0 {
                return Err(Error::Invalid(
                    "hard-edge potential needs degree >= 1 and positive leading coefficient".into(),
                ));
            }
            if !(singularity_alpha > -1.0) {
                return Err(Error::Invalid(format!(
                    "hard-edge exponent {singularity_alpha} must exceed -1"
                )));
            }
        } else {
            if deg < 2 || deg % 2 == 1 || lead <= 0.0 {
                return Err(Error::Invalid(format!(
                    "potential must have even degree >= 2 and positive leading coefficient (degree {deg}, lead {lead})"
                )));
            }
            if !(singularity_alpha > -0.5) {
                return Err(Error::Invalid(format!(
                    "singularity exponent {singularity_alpha} must exceed -1/2"
                )));
            }
        }
        let v = Self {
            coefficients,
            hard_edge,
            singularity_alpha,
        };
        if hard_edge {
            let dv = v.derivative_coefficients();
            let reach = 2.0 * poly::root_bound(&dv);
            if (0..=2000).any(|i| poly::eval(&dv, reach * i as f64 / 2000.0) <= 0.0) {
                return Err(Error::Invalid(
                    "hard-edge potential needs V' > 0 on [0, inf)".into(),
                ));
            }
        }
        Ok(v)
    }

    /// `V(x) = x²/2`.
    pub fn gaussian() -> Self {
        Self {
            coefficients: vec![0.0, 0.0, 0.5],
            hard_edge: false,
            singularity_alpha: 0.0,
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn value(&self, x: f64) -> f64 {
        poly::eval(&self.coefficients, x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        poly::eval(&self.derivative_coefficients(), x)
    }

    pub fn derivative_coefficients(&self) -> Vec<f64> {
        poly::derivative(&self.coefficients)
    }

    /// `V(λx)`.
    pub fn dilate(&self, lambda: f64) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c * lambda.powi(k as i32))
            .collect();
        Self {
            coefficients,
            ..self.clone()
        }
    }

    pub fn is_even(&self) -> bool {
        !self.hard_edge
            && self
                .coefficients
                .iter()
                .skip(1)
                .step_by(2)
                .all(|&c| c == 0.0)
    }
}
