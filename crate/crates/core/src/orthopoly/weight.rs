use crate::equilibrium::Potential;
use crate::error::{Error, Result};
use crate::quad::{gauss_jacobi, gauss_legendre};

/// Tail margin: weighted polynomials are below `e^{-TAIL}` of their peak outside the window.
const TAIL: f64 = 75.0;
const PANEL_ORDER: usize = 64;

/// The varying weight `e^{−N·V(x)}`, times `|x|^{2α}` for a soft potential or
/// `x^α` on `[0, ∞)` for a hard edge.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    pub potential: Potential,
    pub n_param: f64,
    /// Explicit integration window; chosen from the tail bound when `None`.
    pub truncation: Option<(f64, f64)>,
}

impl WeightSpec {
    pub fn new(potential: Potential, n_param: f64) -> Result<Self> {
        if !(n_param > 0.0) || !n_param.is_finite() {
            return Err(Error::Invalid(format!(
                "weight parameter N must be positive, got {n_param}"
            )));
        }
        Ok(Self {
            potential,
            n_param,
            truncation: None,
        })
    }

    pub fn with_truncation(mut self, lo: f64, hi: f64) -> Result<Self> {
        let lo_ok = !self.potential.hard_edge || lo == 0.0;
        if !(hi > lo) || !lo_ok {
            return Err(Error::Invalid(format!(
                "bad truncation window [{lo}, {hi}]"
            )));
        }
        self.truncation = Some((lo, hi));
        Ok(self)
    }

    fn alpha(&self) -> f64 {
        self.potential.singularity_alpha
    }

    /// `log w(x)`; `−∞` off the half line at a hard edge.
    pub fn log_weight(&self, x: f64) -> f64 {
        let base = -self.n_param * self.potential.value(x);
        let a = self.alpha();
        if self.potential.hard_edge {
            if x < 0.0 {
                return f64::NEG_INFINITY;
            }
            if a == 0.0 {
                base
            } else {
                base + a * x.ln()
            }
        } else if a == 0.0 {
            base
        } else {
            base + 2.0 * a * x.abs().ln()
        }
    }

    /// True when the weight is not smooth at the origin and panels should be graded there.
    fn singular_at_origin(&self) -> bool {
        let a = self.alpha();
        if self.potential.hard_edge {
            a.fract() != 0.0
        } else {
            a != 0.0 && a.fract() != 0.0
        }
    }

    /// Location and value of the maximum of `log w`. A weight that blows up at
    /// the origin is measured by its smooth factor instead.
    fn peak(&self) -> (f64, f64) {
        let p = self.origin_exponent();
        let target = |x: f64| {
            let lw = self.log_weight(x);
            let v = if p < 0.0 { lw - p * x.abs().ln() } else { lw };
            if v.is_nan() {
                f64::NEG_INFINITY
            } else {
                v
            }
        };
        let (lo, hi) = if self.potential.hard_edge {
            (0.0, 50.0)
        } else {
            (-50.0, 50.0)
        };
        let steps = 20000;
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..steps {
            let x = lo + (hi - lo) * (i as f64 + 0.5) / steps as f64;
            let lw = target(x);
            if lw > best.1 {
                best = (x, lw);
            }
        }
        // Golden-section refinement over the neighbouring cells; a narrow weight
        // can fall by many decades between grid points.
        let h = (hi - lo) / steps as f64;
        let (mut a, mut b) = ((best.0 - h).max(lo), best.0 + h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..100 {
            let (c, d) = (b - g * (b - a), a + g * (b - a));
            if target(c) >= target(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let x = 0.5 * (a + b);
        let candidates = [best, (x, target(x)), (lo, target(lo))];
        candidates
            .into_iter()
            .fold(best, |m, c| if c.1 > m.1 { c } else { m })
    }

    /// Distance at which the weight has dropped by `e^{−n/2}`, capped at 1. For
    /// `N ≫ n` the polynomials live on this scale rather than on the unit scale.
    fn length_scale(&self, x0: f64, peak: f64, n_max: usize) -> f64 {
        let drop = 0.5 * n_max as f64;
        let fallen = |d: f64| {
            let right = peak - self.log_weight(x0 + d) >= drop;
            let left = self.potential.hard_edge || peak - self.log_weight(x0 - d) >= drop;
            right && left
        };
        if !fallen(1.0) {
            return 1.0;
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if fallen(mid) {
                hi = mid
            } else {
                lo = mid
            }
        }
        hi
    }

    /// Integration window for polynomials up to degree `n_max`.
    pub fn window(&self, n_max: usize) -> (f64, f64) {
        if let Some(w) = self.truncation {
            return w;
        }
        let (x0, peak) = self.peak();
        let s = self.length_scale(x0, peak, n_max);
        let negligible = |x: f64| {
            let growth = 2.0 * n_max as f64 * (2.0 * (x.abs() / s).max(1.0)).ln();
            peak - self.log_weight(x) - growth >= TAIL
        };
        let reach = |dir: f64| {
            let mut d = 0.5 * s;
            while !negligible(x0 + dir * d) {
                d *= 1.1;
            }
            x0 + dir * d
        };
        let hi = reach(1.0);
        let lo = if self.potential.hard_edge {
            0.0
        } else {
            reach(-1.0)
        };
        (lo, hi)
    }

    /// Exponent of `|x|` in the weight near the origin.
    fn origin_exponent(&self) -> f64 {
        if self.potential.hard_edge {
            self.alpha()
        } else {
            2.0 * self.alpha()
        }
    }

    /// Quadrature nodes with `log(quadrature weight · w(x))`. Panels touching
    /// a non-smooth origin use Gauss–Jacobi rules that absorb `|x|^p`.
    pub(crate) fn discretize(&self, window: (f64, f64), panels: usize) -> (Vec<f64>, Vec<f64>) {
        let (lo, hi) = window;
        let width = (hi - lo) / panels as f64;
        let mut breaks: Vec<f64> = (0..=panels).map(|i| lo + width * i as f64).collect();
        let singular = self.singular_at_origin() && lo <= 0.0 && hi >= 0.0;
        if singular {
            breaks.push(0.0);
            breaks.sort_by(|a, b| a.total_cmp(b));
            breaks.dedup();
        }
        let p = self.origin_exponent();
        let plain = gauss_legendre(PANEL_ORDER);
        let right = singular.then(|| gauss_jacobi(PANEL_ORDER, 0.0, p));
        let left = singular.then(|| gauss_jacobi(PANEL_ORDER, p, 0.0));
        let mut nodes = Vec::with_capacity(breaks.len() * PANEL_ORDER);
        let mut logs = Vec::with_capacity(breaks.len() * PANEL_ORDER);
        for pair in breaks.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let rule = match (&left, &right) {
                (_, Some(r)) if a == 0.0 => Some(r),
                (Some(l), _) if b == 0.0 => Some(l),
                _ => None,
            };
            match rule {
                Some(rule) => {
                    let half = 0.5 * (b - a);
                    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                        let x = 0.5 * (a + b) + half * t;
                        // The rule already carries |x|^p / half^p.
                        let smooth = self.log_weight(x) - p * x.abs().ln();
                        nodes.push(x);
                        logs.push(w.ln() + (p + 1.0) * half.ln() + smooth);
                    }
                }
                None => {
                    for (x, w) in plain.mapped(a, b) {
                        nodes.push(x);
                        logs.push(w.ln() + self.log_weight(x));
                    }
                }
            }
        }
        (nodes, logs)
    }
}
