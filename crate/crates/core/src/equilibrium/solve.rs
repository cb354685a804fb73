use nalgebra::{DMatrix, DVector};

use super::endpoints;
use super::grid::grid_energy_minimize;
use super::measure::{EquilibriumMeasure, QFunction};
use super::Potential;
use crate::error::{Error, Result};

const DAMPING: f64 = 0.5;
const BUDGET: usize = 500;
const MERGE_TOL: f64 = 1e-9;
const FIXED_POINT_NODES: usize = 1024;
const NEWTON_NODES: usize = 2048;

/// Number of moments `m_0 … m_{count−1}` that determine `q_V`.
fn moment_count(v: &Potential) -> usize {
    if v.hard_edge {
        v.degree()
    } else {
        v.degree() - 1
    }
}

/// Moments of `(1/π)√(q⁻)` for the `q` built from `moments`.
fn moment_map(v: &Potential, moments: &[f64], nodes: usize) -> Result<(Vec<f64>, (f64, f64))> {
    let q = QFunction::from_moments(v, moments);
    let intervals = q.negativity_intervals(v.hard_edge, MERGE_TOL);
    let (a, b) = match (intervals.first(), intervals.last()) {
        (Some(f), Some(l)) => (f.0, l.1),
        _ => {
            return Err(Error::NonConvergence(
                "trial q_V is nowhere negative".into(),
            ))
        }
    };
    Ok((q.moments_over(a, b, moments.len(), nodes), (a, b)))
}

fn residual(v: &Potential, moments: &[f64], nodes: usize) -> Result<(Vec<f64>, f64)> {
    let (image, _) = moment_map(v, moments, nodes)?;
    let r: Vec<f64> = image
        .iter()
        .zip(moments)
        .skip(1)
        .map(|(a, b)| a - b)
        .collect();
    let size = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok((r, size))
}

fn newton_polish(v: &Potential, mut moments: Vec<f64>) -> Result<(Vec<f64>, f64)> {
    let k = moments.len() - 1;
    let (mut r, mut size) = residual(v, &moments, NEWTON_NODES)?;
    for _ in 0..40 {
        if size < 1e-15 {
            break;
        }
        let mut jac = DMatrix::zeros(k, k);
        for j in 0..k {
            let step = 1e-7 * moments[j + 1].abs().max(1.0);
            let mut shifted = moments.clone();
            shifted[j + 1] += step;
            let (rj, _) = residual(v, &shifted, NEWTON_NODES)?;
            for i in 0..k {
                jac[(i, j)] = (rj[i] - r[i]) / step;
            }
        }
        let rhs = DVector::from_vec(r.clone());
        let delta = match jac.lu().solve(&rhs) {
            Some(d) => d,
            None => break,
        };
        let mut trial = moments.clone();
        let mut accepted = false;
        let mut lambda = 1.0;
        for _ in 0..20 {
            for j in 0..k {
                trial[j + 1] = moments[j + 1] - lambda * delta[j];
            }
            if let Ok((rt, st)) = residual(v, &trial, NEWTON_NODES) {
                if st < size {
                    moments = trial.clone();
                    r = rt;
                    size = st;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Ok((moments, size))
}

/// Seed moments from a coarse grid minimisation of the weighted energy.
fn seed_moments(v: &Potential, count: usize) -> Result<Vec<f64>> {
    let grid = grid_energy_minimize(v, 240)?;
    Ok((0..count)
        .map(|k| {
            grid.centers
                .iter()
                .zip(&grid.weights)
                .map(|(x, w)| w * x.powi(k as i32))
                .sum()
        })
        .collect())
}

/// Equilibrium measure of a one-cut polynomial external field.
///
/// Iterates moments ↦ moments of `(1/π)√(q_V⁻)` with damping, then polishes
/// the fixed point by Newton's method with a finite-difference Jacobian.
pub fn solve_equilibrium(v: &Potential) -> Result<EquilibriumMeasure> {
    let count = moment_count(v);
    let mut moments = vec![0.0; count];
    moments[0] = 1.0;
    let mut iterations = 0;
    if count > 1 {
        moments = seed_moments(v, count)?;
        moments[0] = 1.0;
        for it in 0..BUDGET {
            iterations = it + 1;
            let (image, _) = moment_map(v, &moments, FIXED_POINT_NODES)?;
            let mut change = 0.0f64;
            for k in 1..count {
                let step = DAMPING * (image[k] - moments[k]);
                change = change.max(step.abs());
                moments[k] += step;
            }
            if change < 1e-13 {
                break;
            }
        }
        let (polished, size) = newton_polish(v, moments)?;
        if size > 1e-9 {
            return Err(Error::NonConvergence(format!(
                "moment fixed point stalled with residual {size:.3e} after {iterations} iterations"
            )));
        }
        moments = polished;
    }
    let q = QFunction::from_moments(v, &moments);
    let intervals = q.negativity_intervals(v.hard_edge, MERGE_TOL);
    if intervals.len() > 1 {
        return Err(Error::MultiCut {
            intervals: intervals.len(),
        });
    }
    let &(a, b) = intervals
        .first()
        .ok_or_else(|| Error::NonConvergence("q_V has no negativity interval".into()))?;
    let a = if v.hard_edge { 0.0 } else { a };
    let (a, b) = endpoints::refine(v, a, b)?;
    let h = endpoints::density_polynomial(v, a, b);
    // A one-cut fixed point whose h changes sign has a signed density; the
    // true measure then lives on the pieces where h stays nonnegative.
    let pieces = endpoints::positive_pieces(&h, a, b, 1e-10);
    if pieces > 0 {
        return Err(Error::MultiCut {
            intervals: pieces.max(2),
        });
    }
    let mut moments = endpoints::moments(v, a, b, &h, count);
    moments[0] = 1.0;
    Ok(EquilibriumMeasure::assemble(v, moments, (a, b), iterations))
}
