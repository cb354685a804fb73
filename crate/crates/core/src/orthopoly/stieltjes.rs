use serde::{Deserialize, Serialize};

use super::WeightSpec;
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 512;
const STABILITY: f64 = 1e-12;
const DOUBLINGS: usize = 4;

/// Monic recurrence `x·P_k = P_{k+1} + b_k·P_k + a_k·P_{k−1}` with squared norms
/// `γ²_k = ∫P_k² w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceTable {
    pub n_max: usize,
    pub n_param: f64,
    /// `a[k]` for `k = 0..=n_max`; `a[0] = 0` is a placeholder.
    pub a: Vec<f64>,
    /// `b[k]` for `k = 0..=n_max`.
    pub b: Vec<f64>,
    /// `log γ²_k`, kept in log form because the norms span hundreds of decades.
    pub log_gamma_sq: Vec<f64>,
    pub window: (f64, f64),
}

impl RecurrenceTable {
    pub fn gamma_sq(&self, k: usize) -> f64 {
        self.log_gamma_sq[k].exp()
    }
}

/// Lanczos form of the discretized Stieltjes procedure on unit vectors.
///
/// Each node keeps its own log scale so that nodes whose weight underflows at
/// low degree still contribute once the polynomial has grown there.
pub(super) fn stieltjes(
    nodes: &[f64],
    log_weights: &[f64],
    n_max: usize,
) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let peak = log_weights
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = log_weights.iter().map(|l| (l - peak).exp()).sum();
    let support = log_weights.iter().filter(|l| l.is_finite()).count();
    if !peak.is_finite() || support <= n_max {
        return Err(Error::Underflow(format!(
            "only {support} quadrature nodes carry weight; need more than {n_max}"
        )));
    }
    let log_h0 = peak + total.ln();
    let m = nodes.len();
    let mut scale: Vec<f64> = log_weights.iter().map(|l| 0.5 * (l - log_h0)).collect();
    let mut prev = vec![0.0; m];
    let mut cur = vec![1.0; m];
    let mut actual = vec![0.0; m];
    let mut a = vec![0.0f64; n_max + 1];
    let mut b = vec![0.0; n_max + 1];
    for k in 0..=n_max {
        for i in 0..m {
            actual[i] = cur[i] * scale[i].exp();
        }
        b[k] = nodes.iter().zip(&actual).map(|(x, q)| x * q * q).sum();
        if k == n_max {
            break;
        }
        let sa = a[k].sqrt();
        let bk = b[k];
        let mut next: Vec<f64> = nodes
            .iter()
            .zip(&cur)
            .zip(&prev)
            .map(|((x, q), p)| (x - bk) * q - sa * p)
            .collect();
        // One reorthogonalisation sweep against the current vector.
        let drift: f64 = next
            .iter()
            .zip(&actual)
            .zip(&scale)
            .map(|((u, q), s)| u * s.exp() * q)
            .sum();
        next.iter_mut().zip(&cur).for_each(|(u, q)| *u -= drift * q);
        let norm_sq: f64 = next
            .iter()
            .zip(&scale)
            .map(|(u, s)| (u * s.exp()).powi(2))
            .sum();
        if !(norm_sq > 0.0) || !norm_sq.is_finite() {
            return Err(Error::Underflow(format!(
                "recurrence collapsed at degree {}",
                k + 1
            )));
        }
        a[k + 1] = norm_sq;
        let inv = norm_sq.sqrt().recip();
        next.iter_mut().for_each(|u| *u *= inv);
        for i in 0..m {
            let big = next[i].abs().max(cur[i].abs());
            if big > 1e100 || (big < 1e-100 && big > 0.0) {
                next[i] /= big;
                cur[i] /= big;
                scale[i] += big.ln();
            }
        }
        prev = cur;
        cur = next;
    }
    Ok((a, b, log_h0))
}

fn stable(old: &(Vec<f64>, Vec<f64>, f64), new: &(Vec<f64>, Vec<f64>, f64)) -> bool {
    let (oa, ob, _) = old;
    let (na, nb, _) = new;
    let a_ok = oa
        .iter()
        .zip(na)
        .skip(1)
        .all(|(x, y)| (x - y).abs() <= STABILITY * y.abs());
    let b_ok = ob.iter().zip(nb).enumerate().all(|(k, (x, y))| {
        let scale = y.abs() + na.get(k + 1).or(na.get(k)).copied().unwrap_or(0.0).sqrt();
        (x - y).abs() <= STABILITY * scale.max(f64::MIN_POSITIVE)
    });
    a_ok && b_ok
}

/// Recurrence coefficients up to degree `n_max`, refining the quadrature grid
/// until two successive grids agree.
pub fn recurrence_table(w: &WeightSpec, n_max: usize) -> Result<RecurrenceTable> {
    if n_max == 0 || n_max > MAX_DEGREE {
        return Err(Error::Invalid(format!(
            "n_max must lie in 1..={MAX_DEGREE}, got {n_max}"
        )));
    }
    let window = w.window(n_max);
    // Zeros crowd quadratically toward a hard edge, so start from a finer grid.
    let per_panel = if w.potential.hard_edge { 6 } else { 24 };
    let mut panels = (n_max / per_panel).max(4);
    let run = |panels: usize| {
        let (x, logs) = w.discretize(window, panels);
        stieltjes(&x, &logs, n_max)
    };
    let mut last = run(panels)?;
    for _ in 0..DOUBLINGS {
        panels *= 2;
        let next = run(panels)?;
        if stable(&last, &next) {
            let (a, b, log_h0) = next;
            let mut acc = log_h0;
            let log_gamma_sq: Vec<f64> = std::iter::once(acc)
                .chain(a[1..=n_max].iter().map(|ak| {
                    acc += ak.ln();
                    acc
                }))
                .collect();
            return Ok(RecurrenceTable {
                n_max,
                n_param: w.n_param,
                a,
                b,
                log_gamma_sq,
                window,
            });
        }
        last = next;
    }
    Err(Error::NonConvergence(format!(
        "recurrence coefficients not stable to {STABILITY:e} after {DOUBLINGS} grid doublings"
    )))
}
