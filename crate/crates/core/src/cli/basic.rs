//! The `eqm`, `kernel` and `oppoly` subcommands.

use serde_json::json;

use super::args::{EqmArgs, GridSpec, KernelArgs, OppolyArgs, OppolyTable};
use super::cache;
use super::config::{ExperimentConfig, KernelConfig, PotentialConfig, WindowConfig};
use super::output::{num, Report};
use crate::equilibrium::{classify, grid_energy_minimize};
use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, KernelHandle, KernelValue};
use crate::orthopoly::{cd_kernel, WeightSpec, MAX_DEGREE};
use crate::parallel;

pub fn eqm(args: &EqmArgs) -> Result<(ExperimentConfig, Report)> {
    let mut cfg = ExperimentConfig::new("eqm", &args.output);
    let pc = PotentialConfig::from_args(&args.potential)?;
    let grid = args.grid.as_deref().map(GridSpec::parse).transpose()?;
    if args.oracle.is_some_and(|m| !(8..=4000).contains(&m)) {
        return Err(Error::Invalid("--oracle must lie in 8..=4000".into()));
    }
    let v = pc.build()?;
    cfg.potential = Some(pc);
    let mu = cache::measure(&v)?;
    let (a, b) = mu.support;
    let grid = grid.unwrap_or(GridSpec {
        lo: a,
        hi: b,
        count: 201,
    });
    cfg.window = Some(WindowConfig {
        x_star: None,
        exponent: None,
        grid: Some(grid),
    });
    cfg.option("oracle", args.oracle);

    let singular = classify(&mu, &v);
    let mut report = Report::new(&["x", "density"]);
    let xs = grid.points();
    for (x, d) in xs.iter().zip(parallel::map(&xs, |&x| mu.density(x))) {
        report.row(vec![num(*x), num(d)]);
    }
    let oracle = match args.oracle {
        Some(m) => {
            let dm = grid_energy_minimize(&v, m)?;
            let sup = dm
                .centers
                .iter()
                .zip(dm.density())
                .map(|(&c, d)| {
                    let (l, r) = (c - 0.5 * dm.width, c + 0.5 * dm.width);
                    (d - (mu.upper_mass(l) - mu.upper_mass(r)) / dm.width).abs()
                })
                .fold(0.0f64, f64::max);
            json!({ "nodes": m, "occupied": dm.occupied(), "sup_density_difference": sup })
        }
        None => json!(null),
    };
    let one_cut_regular = singular.is_empty();
    report.results = json!({
        "support": [a, b],
        "h": mu.h,
        "moments": mu.moments,
        "ell": mu.ell,
        "singular_points": singular,
        "one_cut_regular": one_cut_regular,
        "density": report.rows_json(),
    });
    report.diagnostics =
        json!({ "iterations": mu.iterations, "mass": mu.mass(), "oracle": oracle });
    Ok((cfg, report))
}

pub fn kernel(args: &KernelArgs) -> Result<(ExperimentConfig, Report)> {
    let mut cfg = ExperimentConfig::new("kernel", &args.output);
    let family: KernelFamily = args.family.parse()?;
    let handle = KernelHandle::new(family, args.alpha, args.s)?;
    let grid = GridSpec::parse(&args.grid)?;
    if grid.count > 1000 {
        return Err(Error::Invalid(
            "kernel grids are limited to 1000 points per axis".into(),
        ));
    }
    cfg.kernel = Some(KernelConfig {
        family: family.name().into(),
        alpha: args.alpha,
        s: args.s,
    });
    cfg.window = Some(WindowConfig {
        x_star: None,
        exponent: None,
        grid: Some(grid),
    });
    let xs = grid.points();
    let matrix = matches!(handle.arity(), crate::kernels::Arity::Matrix2x2);
    let columns: &[&'static str] = if matrix {
        &["x", "y", "k11", "k12", "k21", "k22"]
    } else {
        &["x", "y", "value"]
    };
    let mut report = Report::new(columns);
    let rows = parallel::map(&xs, |&x| {
        xs.iter()
            .map(|&y| handle.eval(x, y).map(|v| (x, y, v)))
            .collect::<Vec<_>>()
    });
    for (x, y, v) in rows.into_iter().flatten().collect::<Result<Vec<_>>>()? {
        let mut r = vec![num(x), num(y)];
        match v {
            KernelValue::Scalar(k) => r.push(num(k)),
            KernelValue::Matrix(m) => r.extend(m.entries.iter().flatten().map(|&v| num(v))),
        }
        report.row(r);
    }
    report.diagnostics = json!({ "rows": report.rows.len() });
    Ok((cfg, report))
}

pub fn oppoly(args: &OppolyArgs) -> Result<(ExperimentConfig, Report)> {
    let mut cfg = ExperimentConfig::new("oppoly", &args.output);
    let pc = PotentialConfig::from_args(&args.potential)?;
    if args.n_max == 0 || args.n_max > MAX_DEGREE {
        return Err(Error::Invalid(format!(
            "--n-max must lie in 1..={MAX_DEGREE}"
        )));
    }
    let n_param = args.n_param.unwrap_or(args.n_max as f64);
    let kernel_n = args.kernel_n.unwrap_or(args.n_max);
    if kernel_n == 0 || kernel_n > args.n_max {
        return Err(Error::Invalid("--kernel-n must lie in 1..=n_max".into()));
    }
    let grid = args.grid.as_deref().map(GridSpec::parse).transpose()?;
    if args.table == OppolyTable::Kernel && grid.is_none() {
        return Err(Error::Invalid("--table kernel needs --grid".into()));
    }
    let w = WeightSpec::new(pc.build()?, n_param)?;
    cfg.potential = Some(pc);
    cfg.ensemble = Some(super::config::EnsembleConfig {
        beta: Some(2),
        n: vec![kernel_n],
        n_param: Some(n_param),
        count: None,
        seed: None,
    });
    cfg.window = Some(WindowConfig {
        x_star: None,
        exponent: None,
        grid,
    });
    cfg.option("n_max", args.n_max);
    cfg.option("table", args.table);

    let t = cache::table(&w, args.n_max)?;
    let mut report = match args.table {
        OppolyTable::Recurrence => {
            let mut r = Report::new(&["k", "a", "b", "log_gamma_sq"]);
            for k in 0..=t.n_max {
                r.row(vec![
                    k.to_string(),
                    num(t.a[k]),
                    num(t.b[k]),
                    num(t.log_gamma_sq[k]),
                ]);
            }
            r
        }
        OppolyTable::Kernel => {
            let xs = grid.map(|g| g.points()).unwrap_or_default();
            let mut r = Report::new(&["x", "y", "value"]);
            let vals = parallel::grid(&xs, &xs, |x, y| cd_kernel(&t, &w, kernel_n, x, y));
            for (x, row) in xs.iter().zip(vals) {
                for (y, k) in xs.iter().zip(row) {
                    r.row(vec![num(*x), num(*y), num(k)]);
                }
            }
            r
        }
    };
    report.diagnostics = json!({ "integration_window": t.window, "n_max": t.n_max });
    Ok((cfg, report))
}
