use serde::Serialize;

use super::{cd_kernel, RecurrenceTable, WeightSpec};
use crate::equilibrium::EquilibriumMeasure;
use crate::error::{Error, Result};
use crate::parallel;

/// Local scaling regime; fixes the exponent in `c_n = (c·n)^p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    Bulk,
    SoftEdge,
    HardEdge,
    Origin,
}

impl Regime {
    pub fn exponent(self) -> f64 {
        match self {
            Regime::Bulk | Regime::Origin => 1.0,
            Regime::SoftEdge => 2.0 / 3.0,
            Regime::HardEdge => 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingWindow {
    pub center: f64,
    pub c: f64,
    pub regime: Regime,
    /// Left soft edge: local variables point into the support from the left.
    pub flip: bool,
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
}

impl ScalingWindow {
    pub fn new(center: f64, c: f64, regime: Regime, us: Vec<f64>, vs: Vec<f64>) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Invalid(format!(
                "scaling constant must be positive, got {c}"
            )));
        }
        Ok(Self {
            center,
            c,
            regime,
            flip: false,
            us,
            vs,
        })
    }

    pub fn flipped(mut self) -> Self {
        self.flip = !self.flip;
        self
    }

    pub fn scale(&self, n: usize) -> f64 {
        (self.c * n as f64).powf(self.regime.exponent())
    }

    fn point(&self, u: f64, cn: f64) -> f64 {
        if self.flip {
            self.center - u / cn
        } else {
            self.center + u / cn
        }
    }
}

/// Values `grid[i][j]` at `(us[i], vs[j])`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelGrid {
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl KernelGrid {
    pub fn max_abs_diff<F: Fn(f64, f64) -> f64>(&self, f: F) -> f64 {
        let mut worst = 0.0f64;
        for (u, row) in self.us.iter().zip(&self.values) {
            for (v, k) in self.vs.iter().zip(row) {
                worst = worst.max((k - f(*u, *v)).abs());
            }
        }
        worst
    }
}

/// `(1/c_n)·K_n(x* ± u/c_n, x* ± v/c_n)` over the window grid.
pub fn rescaled_kernel(
    t: &RecurrenceTable,
    w: &WeightSpec,
    n: usize,
    window: &ScalingWindow,
) -> Result<KernelGrid> {
    let cn = window.scale(n);
    let (lo, hi) = t.window;
    for &u in window.us.iter().chain(&window.vs) {
        let x = window.point(u, cn);
        if !(x >= lo && x <= hi) {
            return Err(Error::Domain(format!(
                "local variable {u} maps to {x}, outside the integration window [{lo}, {hi}]"
            )));
        }
    }
    let values = parallel::grid(&window.us, &window.vs, |u, v| {
        cd_kernel(t, w, n, window.point(u, cn), window.point(v, cn)) / cn
    });
    Ok(KernelGrid {
        us: window.us.clone(),
        vs: window.vs.clone(),
        values,
    })
}

/// Scaling constant `c` for a regime, read off the equilibrium measure.
///
/// Bulk and origin use the density at `center`; the soft edge uses
/// `h(b)√(b−a)` so that `(c·n)^{2/3}` is the conformal-map scale; the hard edge
/// matches `ρ ≈ C/√x` against the Bessel profile, giving `c = 2πC`.
pub fn scaling_constant(mu: &EquilibriumMeasure, regime: Regime, center: f64) -> Result<f64> {
    let (a, b) = mu.support;
    let h = |x: f64| crate::poly::eval(&mu.h, x);
    let c = match regime {
        Regime::Bulk | Regime::Origin => mu.density(center),
        Regime::SoftEdge => {
            if (center - b).abs() <= 1e-9 * (1.0 + b.abs()) {
                h(b) * (b - a).sqrt()
            } else if (center - a).abs() <= 1e-9 * (1.0 + a.abs()) && !mu.potential.hard_edge {
                h(a) * (b - a).sqrt()
            } else {
                return Err(Error::Domain(format!(
                    "{center} is not a soft edge of [{a}, {b}]"
                )));
            }
        }
        Regime::HardEdge => {
            if !mu.potential.hard_edge || center != 0.0 {
                return Err(Error::Domain(
                    "hard-edge scaling needs a hard edge at 0".into(),
                ));
            }
            2.0 * h(0.0) * b.sqrt()
        }
    };
    if c > 0.0 {
        Ok(c)
    } else {
        Err(Error::Domain(format!(
            "scaling constant {c} is not positive at {center}"
        )))
    }
}
