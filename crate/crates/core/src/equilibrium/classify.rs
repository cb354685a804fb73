use serde::{Deserialize, Serialize};

use super::{EquilibriumMeasure, Potential};
use crate::poly;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SingularType {
    /// ρ vanishes like |x − x*|^{2k} inside the support.
    InteriorSingular { k: u32 },
    /// ρ vanishes like |x − x*|^{k+1/2} at an endpoint.
    SingularEdge { k: u32 },
    /// The variational inequality becomes an equality off the support.
    ExteriorSingular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub location: f64,
    pub kind: SingularType,
}

/// Threshold on `−q_V` (that is, π²ρ²) below which an interior minimum counts as a zero.
pub const INTERIOR_TOL: f64 = 1e-9;

/// Multiplicity of `x0` as a root of `h`, judged on scaled Taylor coefficients.
fn root_multiplicity(h: &[f64], x0: f64, scale: f64) -> u32 {
    let mut d = h.to_vec();
    let size = h.iter().fold(0.0f64, |m, c| m.max(c.abs())).max(1e-300);
    let mut fact = 1.0;
    for m in 0..h.len() as u32 {
        let coeff = poly::eval(&d, x0) / fact * scale.powi(m as i32);
        if coeff.abs() > 1e-6 * size {
            return m;
        }
        d = poly::derivative(&d);
        fact *= (m + 1) as f64;
    }
    h.len() as u32
}

/// The search on `q_V` only resolves a zero of order `2k` to about `ε^{1/(4k)}`;
/// Newton on the derivative of `h` with a simple root there recovers full precision.
fn polish_root(h: &[f64], x0: f64, scale: f64) -> f64 {
    let m = root_multiplicity(h, x0, scale);
    if m == 0 {
        return x0;
    }
    let mut d = h.to_vec();
    for _ in 1..m {
        d = poly::derivative(&d);
    }
    let dd = poly::derivative(&d);
    let mut x = x0;
    for _ in 0..20 {
        let slope = poly::eval(&dd, x);
        if slope == 0.0 {
            break;
        }
        let step = poly::eval(&d, x) / slope;
        x -= step;
        if step.abs() <= 1e-15 * scale {
            break;
        }
    }
    if (x - x0).abs() <= 1e-3 * scale {
        x
    } else {
        x0
    }
}

/// Singular points of a one-cut equilibrium measure.
pub fn classify(mu: &EquilibriumMeasure, v: &Potential) -> Vec<SingularPoint> {
    let (a, b) = mu.support;
    let width = b - a;
    let mut out = Vec::new();

    // Interior: local maxima of q_V (minima of ρ²) that reach zero.
    const SCAN: usize = 10_000;
    let xs: Vec<f64> = (1..SCAN)
        .map(|i| a + width * i as f64 / SCAN as f64)
        .collect();
    let qs: Vec<f64> = xs.iter().map(|&x| mu.q.eval(x)).collect();
    for i in 1..xs.len() - 1 {
        if qs[i] >= qs[i - 1] && qs[i] > qs[i + 1] && -qs[i] <= INTERIOR_TOL {
            let (mut lo, mut hi) = (xs[i - 1], xs[i + 1]);
            for _ in 0..100 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if mu.q.eval(m1) < mu.q.eval(m2) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            let x0 = polish_root(&mu.h, 0.5 * (lo + hi), width);
            let m = root_multiplicity(&mu.h, x0, width).max(2);
            out.push(SingularPoint {
                location: x0,
                kind: SingularType::InteriorSingular { k: m / 2 },
            });
        }
    }

    // Endpoints: h vanishing there raises the order beyond 1/2.
    let hard = v.hard_edge && mu.q.pole > 0.0;
    let ends: &[f64] = if hard { &[b] } else { &[a, b] };
    for &e in ends {
        let m = root_multiplicity(&mu.h, e, width);
        if m > 0 {
            out.push(SingularPoint {
                location: e,
                kind: SingularType::SingularEdge { k: m },
            });
        }
    }

    // Exterior: interior local minima of the effective potential that touch zero.
    let reach = 1.5 * width;
    let mut sides = vec![(b, b + reach)];
    if !hard && !v.hard_edge {
        sides.push((a - reach, a));
    } else if v.hard_edge && a > 0.0 {
        sides.push((0.0, a));
    }
    for (lo, hi) in sides {
        let n = 2000;
        let ys: Vec<f64> = (1..n)
            .map(|i| lo + (hi - lo) * i as f64 / n as f64)
            .collect();
        let es: Vec<f64> = ys.iter().map(|&x| mu.effective_potential(x)).collect();
        for i in 1..ys.len() - 1 {
            if es[i] <= es[i - 1] && es[i] < es[i + 1] && es[i] < 1e-8 {
                out.push(SingularPoint {
                    location: ys[i],
                    kind: SingularType::ExteriorSingular,
                });
            }
        }
    }
    out.sort_by(|p, q| p.location.total_cmp(&q.location));
    out
}
