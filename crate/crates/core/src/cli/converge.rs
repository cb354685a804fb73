use std::time::Instant;

use serde_json::json;

use super::args::{parse_sizes, ConvergeArgs, GridSpec, Mode};
use super::cache;
use super::config::{EnsembleConfig, ExperimentConfig, PotentialConfig, WindowConfig};
use super::output::{num, Report};
use crate::equilibrium::{EquilibriumMeasure, Potential};
use crate::error::{Error, Result};
use crate::kernels::KernelHandle;
use crate::orthopoly::{
    rescaled_kernel, scaling_constant, Regime, ScalingWindow, WeightSpec, MAX_DEGREE,
};
use crate::parallel;

/// Sup and integrated errors of one rescaled finite-n kernel against its limit.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub sup_error: f64,
    pub l1_error: f64,
    pub runtime_seconds: f64,
}

/// Everything fixed across degrees: regime, centre, constant and limit kernel.
pub struct Setup {
    pub regime: Regime,
    pub x_star: f64,
    pub c: f64,
    pub flip: bool,
    pub limit: KernelHandle,
}

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-9 * (1.0 + y.abs())
}

pub fn setup(
    mode: Mode,
    v: &Potential,
    mu: &EquilibriumMeasure,
    x_star: Option<f64>,
) -> Result<Setup> {
    let (a, b) = mu.support;
    let alpha = v.singularity_alpha;
    let (regime, x_star, limit) = match mode {
        Mode::Bulk => {
            if alpha != 0.0 || v.hard_edge {
                return Err(Error::Invalid(
                    "bulk mode needs a soft potential without a singular factor".into(),
                ));
            }
            (
                Regime::Bulk,
                x_star.unwrap_or(mu.center()),
                KernelHandle::sine(),
            )
        }
        Mode::Edge => {
            let x = x_star.unwrap_or(b);
            if alpha != 0.0 || !(near(x, b) || (near(x, a) && !v.hard_edge)) {
                return Err(Error::Invalid(
                    "edge mode needs x* at a soft endpoint and no singular factor".into(),
                ));
            }
            (
                Regime::SoftEdge,
                if near(x, b) { b } else { a },
                KernelHandle::airy(),
            )
        }
        Mode::Hard => {
            if !v.hard_edge || x_star.is_some_and(|x| x != 0.0) {
                return Err(Error::Invalid(
                    "hard mode needs --hard-edge and x* = 0".into(),
                ));
            }
            (Regime::HardEdge, 0.0, KernelHandle::bessel_hard(alpha)?)
        }
        Mode::Origin => {
            if v.hard_edge || x_star.is_some_and(|x| x != 0.0) || !(a < 0.0 && b > 0.0) {
                return Err(Error::Invalid(
                    "origin mode needs a soft potential with 0 in the bulk".into(),
                ));
            }
            (Regime::Origin, 0.0, KernelHandle::bessel_origin(alpha)?)
        }
    };
    if regime == Regime::Bulk && !(a < x_star && x_star < b) {
        return Err(Error::Invalid(format!(
            "x* = {x_star} is not in the bulk ({a}, {b})"
        )));
    }
    let c = scaling_constant(mu, regime, x_star)?;
    let flip = regime == Regime::SoftEdge && near(x_star, a) && !near(x_star, b);
    Ok(Setup {
        regime,
        x_star,
        c,
        flip,
        limit,
    })
}

pub fn default_grid(mode: Mode) -> GridSpec {
    match mode {
        Mode::Bulk => GridSpec {
            lo: -2.0,
            hi: 2.0,
            count: 41,
        },
        Mode::Edge => GridSpec {
            lo: -4.0,
            hi: 4.0,
            count: 41,
        },
        Mode::Hard => GridSpec {
            lo: 0.2,
            hi: 8.0,
            count: 40,
        },
        Mode::Origin => GridSpec {
            lo: 0.075,
            hi: 3.0,
            count: 40,
        },
    }
}

/// Error of the rescaled degree-`n` kernel (with `N = n`) on the square grid `us × us`.
pub fn convergence_row(v: &Potential, s: &Setup, us: &[f64], n: usize) -> Result<ConvergenceRow> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::Invalid(format!(
            "degree {n} outside 1..={MAX_DEGREE}"
        )));
    }
    let start = Instant::now();
    let w = WeightSpec::new(v.clone(), n as f64)?;
    let t = cache::table(&w, n)?;
    let mut window = ScalingWindow::new(s.x_star, s.c, s.regime, us.to_vec(), us.to_vec())?;
    if s.flip {
        window = window.flipped();
    }
    let grid = rescaled_kernel(&t, &w, n, &window)?;
    let limit = parallel::grid(us, us, |x, y| s.limit.eval_scalar(x, y).unwrap_or(f64::NAN));
    let mut sup = 0.0f64;
    let mut sum = 0.0;
    for (row, lrow) in grid.values.iter().zip(&limit) {
        for (k, l) in row.iter().zip(lrow) {
            if !l.is_finite() {
                return Err(Error::NonConvergence(
                    "limit kernel evaluation failed on the grid".into(),
                ));
            }
            sup = sup.max((k - l).abs());
            sum += (k - l).abs();
        }
    }
    let cell = if us.len() > 1 {
        (us[us.len() - 1] - us[0]) / (us.len() - 1) as f64
    } else {
        1.0
    };
    Ok(ConvergenceRow {
        n,
        sup_error: sup,
        l1_error: sum * cell * cell,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn converge(args: &ConvergeArgs) -> Result<(ExperimentConfig, Report)> {
    let mut cfg = ExperimentConfig::new("converge", &args.output);
    let pc = PotentialConfig::from_args(&args.potential)?;
    let ns = parse_sizes(&args.n)?;
    if let Some(&n) = ns.iter().find(|&&n| n > MAX_DEGREE) {
        return Err(Error::Invalid(format!("degree {n} exceeds {MAX_DEGREE}")));
    }
    let grid = args
        .grid
        .as_deref()
        .map(GridSpec::parse)
        .transpose()?
        .unwrap_or(default_grid(args.mode));
    let v = pc.build()?;
    let mu = cache::measure(&v)?;
    let s = setup(args.mode, &v, &mu, args.x_star)?;
    cfg.potential = Some(pc);
    cfg.ensemble = Some(EnsembleConfig {
        beta: Some(2),
        n: ns.clone(),
        n_param: None,
        count: None,
        seed: None,
    });
    cfg.window = Some(WindowConfig {
        x_star: Some(s.x_star),
        exponent: Some(s.regime.exponent()),
        grid: Some(grid),
    });
    cfg.option("mode", args.mode);
    cfg.option("c", s.c);

    let us = grid.points();
    let mut report = Report::new(&["n", "mode", "sup_error", "l1_error", "runtime_seconds"]);
    let mode = serde_json::to_value(args.mode)
        .ok()
        .and_then(|m| m.as_str().map(String::from))
        .unwrap_or_default();
    let mut rows = Vec::new();
    for &n in &ns {
        let r = convergence_row(&v, &s, &us, n)?;
        report.row(vec![
            n.to_string(),
            mode.clone(),
            num(r.sup_error),
            num(r.l1_error),
            num(r.runtime_seconds),
        ]);
        rows.push(r);
    }
    let ratios: Vec<f64> = rows
        .windows(2)
        .map(|p| p[1].sup_error / p[0].sup_error)
        .collect();
    report.diagnostics = json!({ "scaling_constant": s.c, "limit_kernel": s.limit.family.name(), "sup_ratios": ratios });
    Ok((cfg, report))
}
