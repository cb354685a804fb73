use serde_json::json;

use super::args::{parse_interval, Ensemble, GridSpec, SampleArgs};
use super::cache;
use super::config::{EnsembleConfig, ExperimentConfig, PotentialConfig, WindowConfig};
use super::output::{num, Report};
use crate::equilibrium::Potential;
use crate::error::{Error, Result};
use crate::mc::{
    compare_to_kernel, empirical_density, fraction_below, local_statistics, poisson_resample,
    sample_gaussian, sample_invariant, Beta,
};
use crate::records::write_batch;

pub fn sample(args: &SampleArgs) -> Result<(ExperimentConfig, Report)> {
    let mut cfg = ExperimentConfig::new("sample", &args.output);
    let beta = Beta::from_u8(args.beta)?;
    let hist = GridSpec::parse(&args.histogram)?;
    let window = args.window.as_deref().map(parse_interval).transpose()?;
    let n_param = args.n_param.unwrap_or(args.n);
    if args.n == 0 || n_param == 0 {
        return Err(Error::Invalid("--n and --n-param must be positive".into()));
    }
    // The n-point gas with weight e^{−NV} fills the support of (N/n)·V.
    let (v, target) = match args.ensemble {
        Ensemble::Gaussian => {
            if args.n_param.is_some_and(|m| m != args.n) {
                return Err(Error::Invalid("the Gaussian ensembles fix N = n".into()));
            }
            (Potential::gaussian(), Potential::gaussian())
        }
        Ensemble::Invariant => {
            let pc = PotentialConfig::from_args(&args.potential)?;
            let v = pc.build()?;
            let ratio = n_param as f64 / args.n as f64;
            let scaled = Potential::new(
                v.coefficients.iter().map(|c| c * ratio).collect(),
                v.hard_edge,
                v.singularity_alpha,
            )?;
            cfg.potential = Some(pc);
            (v, scaled)
        }
    };
    let mu = cache::measure(&target)?;
    let (a, b) = mu.support;
    let window = window.unwrap_or((mu.center() - 0.25 * (b - a), mu.center() + 0.25 * (b - a)));
    cfg.ensemble = Some(EnsembleConfig {
        beta: Some(args.beta),
        n: vec![args.n],
        n_param: Some(n_param as f64),
        count: Some(args.count),
        seed: Some(args.seed),
    });
    cfg.window = Some(WindowConfig {
        x_star: None,
        exponent: None,
        grid: Some(hist),
    });
    cfg.option("ensemble", args.ensemble);
    cfg.option("spacing_window", window);
    if args.ensemble == Ensemble::Invariant {
        cfg.option("steps", args.steps);
    }
    cfg.option(
        "batch_out",
        args.batch_out.as_ref().map(|p| p.display().to_string()),
    );

    let (batch, acceptance) = match args.ensemble {
        Ensemble::Gaussian => (sample_gaussian(beta, args.n, args.count, args.seed)?, None),
        Ensemble::Invariant => {
            let run =
                sample_invariant(&v, beta, args.n, n_param, args.count, args.steps, args.seed)?;
            let acc = json!({ "rate": run.acceptance_rate, "widths": run.proposal_widths, "spacing": run.spacing });
            (run.batch, Some(acc))
        }
    };
    let h = empirical_density(&batch, hist.count, (hist.lo, hist.hi))?;
    let predicted = h.predicted_from(&mu);
    let dist = compare_to_kernel(&h, &predicted)?;
    let spacing = local_statistics(&batch, &mu, window.0, window.1)?;
    let poisson = poisson_resample(&spacing, args.seed ^ 0x5eed);

    let mut report = Report::new(&["bin_center", "density"]);
    for (c, d) in h.centers().iter().zip(&h.density) {
        report.row(vec![num(*c), num(*d)]);
    }
    report.results = json!({
        "histogram": report.rows_json(),
        "equilibrium_distance": dist,
        "spacings": {
            "count": spacing.spacings.len(),
            "mean": spacing.mean(),
            "fraction_below_0.05": fraction_below(&spacing.spacings, 0.05),
            "fraction_below_0.2": fraction_below(&spacing.spacings, 0.2),
            "poisson_fraction_below_0.05": fraction_below(&poisson, 0.05),
        },
    });
    report.diagnostics = json!({ "outside_fraction": h.outside, "metropolis": acceptance });
    if let Some(path) = &args.batch_out {
        let mut bytes = Vec::new();
        write_batch(&batch, &mut bytes)?;
        std::fs::write(path, bytes)
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok((cfg, report))
}
