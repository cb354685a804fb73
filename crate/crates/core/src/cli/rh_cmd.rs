use num_complex::Complex64 as C;
use serde_json::json;

use super::args::{parse_sizes, RhArgs};
use super::cache;
use super::config::{EnsembleConfig, ExperimentConfig, PotentialConfig};
use super::output::{num, Report};
use crate::error::{Error, Result};
use crate::rh::{
    airy_asymptotic_residual, airy_branches, airy_jump_residual, airy_model, DescentContext,
    Endpoint, Ray,
};

const MATCHING_POINTS: usize = 64;

fn label(z: C) -> String {
    format!("{}{:+}i", z.re, z.im)
}

pub fn rh(args: &RhArgs) -> Result<(ExperimentConfig, Report)> {
    let mut cfg = ExperimentConfig::new("rh", &args.output);
    let pc = PotentialConfig::from_args(&args.potential)?;
    let ns = parse_sizes(&args.n)?;
    let v = pc.build()?;
    if v.hard_edge {
        return Err(Error::Invalid(
            "rh diagnostics need a soft-edge potential".into(),
        ));
    }
    cfg.potential = Some(pc);
    cfg.ensemble = Some(EnsembleConfig {
        beta: Some(2),
        n: ns.clone(),
        n_param: None,
        count: None,
        seed: None,
    });
    cfg.option("delta", args.delta);
    let mu = cache::measure(&v)?;

    let mut report = Report::new(&["check", "location", "n", "value"]);
    let mut push = |check: &str, loc: String, n: Option<usize>, value: f64| {
        report.row(vec![
            check.into(),
            loc,
            n.map_or("-".into(), |n| n.to_string()),
            num(value),
        ]);
    };
    for ray in Ray::ALL {
        for r in [0.5, 1.0, 2.0, 4.0] {
            push(
                "airy_jump",
                format!("{ray:?}@{r}"),
                None,
                airy_jump_residual(ray, r)?,
            );
        }
    }
    let samples = [
        C::new(1.0, 1.0),
        C::new(-1.0, 0.5),
        C::new(-1.0, -0.5),
        C::new(1.0, -1.0),
        C::from_polar(3.0, 0.3),
    ];
    for z in samples {
        let a = airy_model(z)?;
        push("det_A", label(z), None, (a.determinant() - 1.0).norm());
        let [(y0, _), (y1, _), (y2, _)] = airy_branches(z)?;
        let scale = y0.norm().max(y1.norm()).max(y2.norm());
        push("airy_sum", label(z), None, (y0 + y1 + y2).norm() / scale);
    }
    for r in [5.0, 10.0, 20.0, 40.0] {
        let z = C::from_polar(r, 0.3);
        push(
            "airy_asymptotic",
            label(z),
            None,
            airy_asymptotic_residual(z)?,
        );
    }
    let mut matching = Vec::new();
    for &n in &ns {
        let ctx = DescentContext::new(mu.clone(), n, args.delta)?;
        if n == ns[0] {
            let (a, b) = ctx.support();
            for z in [
                C::new(0.5 * (a + b), 0.7),
                C::new(b + 1.0, -0.3),
                C::new(a - 0.5, 0.0),
            ] {
                push(
                    "det_M",
                    label(z),
                    None,
                    (ctx.outer_parametrix(z)?.determinant() - 1.0).norm(),
                );
            }
        }
        for (name, at) in [
            ("matching_right", Endpoint::Right),
            ("matching_left", Endpoint::Left),
        ] {
            let e = ctx.matching_error(at, MATCHING_POINTS)?;
            push(name, format!("delta={}", args.delta), Some(n), e);
            matching.push(json!({ "n": n, "endpoint": name, "error": e }));
        }
    }
    report.diagnostics = json!({ "support": mu.support, "matching": matching });
    Ok((cfg, report))
}
