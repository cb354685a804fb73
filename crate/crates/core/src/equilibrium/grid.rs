use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::Potential;
use crate::error::{Error, Result};
use crate::poly;

/// Weights on equal cells minimising the discretised weighted energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    pub centers: Vec<f64>,
    pub weights: Vec<f64>,
    pub width: f64,
    /// Energy after every accepted update.
    pub energies: Vec<f64>,
    pub iterations: usize,
}

impl DiscreteMeasure {
    /// Cell-averaged density.
    pub fn density(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w / self.width).collect()
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Smallest interval containing all cells with positive weight.
    pub fn occupied(&self) -> (f64, f64) {
        let idx: Vec<usize> = (0..self.weights.len())
            .filter(|&i| self.weights[i] > 0.0)
            .collect();
        let lo = self.centers[*idx.first().unwrap_or(&0)] - 0.5 * self.width;
        let hi = self.centers[*idx.last().unwrap_or(&0)] + 0.5 * self.width;
        (lo, hi)
    }
}

/// Antiderivative pair for cell averages of `log|u|`: `G'' = log|u|`.
fn g(u: f64) -> f64 {
    let u = u.abs();
    if u == 0.0 {
        0.0
    } else {
        0.5 * u * u * u.ln() - 0.75 * u * u
    }
}

/// `−(1/Δ²)∫∫ log|x − y|` over two cells `k` apart.
fn log_interaction(k: usize, d: f64) -> f64 {
    let k = k as f64;
    -(g((k + 1.0) * d) - 2.0 * g(k * d) + g((k - 1.0) * d)) / (d * d)
}

struct Problem {
    centers: Vec<f64>,
    width: f64,
    kernel: Vec<f64>,
    field: Vec<f64>,
}

impl Problem {
    fn new(v: &Potential, lo: f64, hi: f64, n: usize) -> Self {
        let width = (hi - lo) / n as f64;
        let centers: Vec<f64> = (0..n).map(|i| lo + (i as f64 + 0.5) * width).collect();
        let kernel = (0..n).map(|k| log_interaction(k, width)).collect();
        let field = centers
            .iter()
            .map(|&x| poly::eval(&v.coefficients, x))
            .collect();
        Self {
            centers,
            width,
            kernel,
            field,
        }
    }

    fn l(&self, i: usize, j: usize) -> f64 {
        self.kernel[i.abs_diff(j)]
    }

    fn energy(&self, w: &[f64]) -> f64 {
        let lw = self.apply(w);
        w.iter().zip(&lw).map(|(a, b)| a * b).sum::<f64>()
            + w.iter().zip(&self.field).map(|(a, b)| a * b).sum::<f64>()
    }

    fn apply(&self, w: &[f64]) -> Vec<f64> {
        let n = w.len();
        let nz: Vec<usize> = (0..n).filter(|&j| w[j] != 0.0).collect();
        crate::parallel::map_range(n, |i| nz.iter().map(|&j| self.l(i, j) * w[j]).sum())
    }

    /// Minimiser over the face `{w_i = 0, i ∉ free}` with unit mass, and the multiplier.
    fn face_minimizer(&self, free: &[usize]) -> Result<(Vec<f64>, f64)> {
        let m = free.len();
        let mut k = DMatrix::zeros(m + 1, m + 1);
        let mut rhs = DVector::zeros(m + 1);
        for (a, &i) in free.iter().enumerate() {
            for (b, &j) in free.iter().enumerate() {
                k[(a, b)] = 2.0 * self.l(i, j);
            }
            k[(a, m)] = -1.0;
            k[(m, a)] = 1.0;
            rhs[a] = -self.field[i];
        }
        rhs[m] = 1.0;
        let sol = k.lu().solve(&rhs).ok_or_else(|| {
            Error::NonConvergence("singular KKT system in grid energy minimisation".into())
        })?;
        let mut z = vec![0.0; self.centers.len()];
        for (a, &i) in free.iter().enumerate() {
            z[i] = sol[a];
        }
        Ok((z, sol[m]))
    }
}

/// Primal active-set minimisation of the discrete weighted energy on
/// `[lo, hi]` split into `n` cells, optionally warm-started.
pub fn grid_energy_minimize_on(
    v: &Potential,
    lo: f64,
    hi: f64,
    n: usize,
    warm: Option<&DiscreteMeasure>,
) -> Result<DiscreteMeasure> {
    if !(2..=2000).contains(&n) || !(hi > lo) {
        return Err(Error::Invalid(format!("grid energy minimisation needs 2..=2000 cells on a proper interval, got {n} on [{lo}, {hi}]")));
    }
    let prob = Problem::new(v, lo, hi, n);
    let mut w = match warm {
        Some(coarse) => {
            let (clo, chi) = coarse.occupied();
            let mut w: Vec<f64> = prob
                .centers
                .iter()
                .map(|&x| if x > clo && x < chi { 1.0 } else { 0.0 })
                .collect();
            if w.iter().all(|&x| x == 0.0) {
                w = vec![1.0; n];
            }
            w
        }
        None => vec![1.0; n],
    };
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    let mut free: Vec<usize> = (0..n).filter(|&i| w[i] > 0.0).collect();
    let mut energies = vec![prob.energy(&w)];
    for it in 1..=4 * n + 50 {
        let (z, lambda) = prob.face_minimizer(&free)?;
        if free.iter().all(|&i| z[i] >= -1e-15) {
            w = z.iter().map(|&x| x.max(0.0)).collect();
            energies.push(prob.energy(&w));
            let grad = prob.apply(&w);
            let mut worst = (0.0, usize::MAX);
            for i in 0..n {
                if w[i] == 0.0 && !free.contains(&i) {
                    let mu = 2.0 * grad[i] + prob.field[i] - lambda;
                    if mu < worst.0 {
                        worst = (mu, i);
                    }
                }
            }
            if worst.0 > -1e-11 {
                return Ok(DiscreteMeasure {
                    centers: prob.centers,
                    weights: w,
                    width: prob.width,
                    energies,
                    iterations: it,
                });
            }
            free.push(worst.1);
            free.sort_unstable();
        } else {
            let mut step = 1.0f64;
            for &i in &free {
                if z[i] < 0.0 {
                    step = step.min(w[i] / (w[i] - z[i]));
                }
            }
            for &i in &free {
                w[i] += step * (z[i] - w[i]);
                if w[i] <= 1e-16 {
                    w[i] = 0.0;
                }
            }
            free.retain(|&i| w[i] > 0.0);
            energies.push(prob.energy(&w));
        }
    }
    Err(Error::NonConvergence(format!(
        "grid energy minimisation with {n} cells exceeded its iteration budget"
    )))
}

/// Grid oracle on an automatically chosen window.
///
/// A coarse solve locates the support (widening the window while mass sits
/// on its boundary); the fine solve uses a window 25% wider than that support
/// and is warm-started from the coarse weights.
pub fn grid_energy_minimize(v: &Potential, grid_size: usize) -> Result<DiscreteMeasure> {
    let mut reach = 2.0 * poly::root_bound(&v.derivative_coefficients()).max(1.0);
    let coarse_n = grid_size.clamp(2, 120);
    let mut coarse;
    loop {
        let lo = if v.hard_edge { 0.0 } else { -reach };
        coarse = grid_energy_minimize_on(v, lo, reach, coarse_n, None)?;
        let boundary =
            coarse.weights[coarse_n - 1] > 0.0 || (!v.hard_edge && coarse.weights[0] > 0.0);
        if !boundary {
            break;
        }
        reach *= 1.6;
        if reach > 1e6 {
            return Err(Error::NonConvergence(
                "grid oracle window failed to contain the support".into(),
            ));
        }
    }
    if grid_size <= coarse_n {
        return Ok(coarse);
    }
    let (a, b) = coarse.occupied();
    let pad = 0.25 * (b - a);
    let lo = if v.hard_edge { 0.0 } else { a - pad };
    grid_energy_minimize_on(v, lo, b + pad, grid_size, Some(&coarse))
}
