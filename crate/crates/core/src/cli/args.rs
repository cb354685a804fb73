use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "rmtlab",
    version,
    about = "Random matrix universality laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the equilibrium measure and classify singular points.
    Eqm(EqmArgs),
    /// Tabulate a universal limiting kernel on a grid.
    Kernel(KernelArgs),
    /// Recurrence coefficients and finite-n Christoffel–Darboux kernels.
    Oppoly(OppolyArgs),
    /// Sup and L¹ errors of rescaled finite-n kernels against their limits.
    Converge(ConvergeArgs),
    /// Parametrix diagnostics: jump residuals, determinants and matching errors.
    Rh(RhArgs),
    /// Monte Carlo batches, histograms and spacing statistics.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; inferred from the `--out` extension when omitted (default csv).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Cap on worker threads (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    /// Ascending polynomial coefficients of V, comma separated (e.g. 0,0,0.5).
    #[arg(long, default_value = "0,0,0.5", allow_hyphen_values = true)]
    pub potential: String,
    /// Restrict to [0, ∞) with a hard edge at 0.
    #[arg(long)]
    pub hard_edge: bool,
    /// Exponent α of the x^α (hard edge) or |x|^{2α} (soft) factor.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Args)]
pub struct EqmArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Density grid `lo:hi:count` (default: the support with 201 points).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Also run the discrete energy minimiser with this many nodes.
    #[arg(long)]
    pub oracle: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    /// sine, airy, bessel-hard, bessel-origin, pearcey, sine-beta1, sine-beta4, airy-beta1, airy-beta4.
    #[arg(long)]
    pub family: String,
    /// Bessel order (bessel-hard, bessel-origin).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Pearcey parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    /// Grid `lo:hi:count`, used for both arguments.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OppolyTable {
    Recurrence,
    Kernel,
}

#[derive(Debug, Clone, Args)]
pub struct OppolyArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Highest degree of the recurrence table.
    #[arg(long)]
    pub n_max: usize,
    /// Weight parameter N (default: n_max).
    #[arg(long)]
    pub n_param: Option<f64>,
    /// Which table to write.
    #[arg(long, value_enum, default_value_t = OppolyTable::Recurrence)]
    pub table: OppolyTable,
    /// Kernel degree n for `--table kernel` (default: n_max).
    #[arg(long)]
    pub kernel_n: Option<usize>,
    /// Kernel grid `lo:hi:count` for `--table kernel`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Bulk,
    Edge,
    Hard,
    Origin,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Scaling regime: bulk (sine), soft edge (Airy), hard edge or spectral singularity at 0 (Bessel)
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Degrees, comma separated; N = n for each.
    #[arg(long)]
    pub n: String,
    /// Centre x* (default: support centre, right endpoint, or 0).
    #[arg(long, allow_hyphen_values = true)]
    pub x_star: Option<f64>,
    /// Local-variable grid `lo:hi:count` (default depends on the mode).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RhArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Degrees for the matching-error table, comma separated.
    #[arg(long, default_value = "32,64,128")]
    pub n: String,
    /// Radius of the endpoint disks.
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Gaussian,
    Invariant,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    /// Gaussian matrices or Metropolis sampling of the log-gas for `--potential`
    #[arg(long, value_enum, default_value_t = Ensemble::Gaussian)]
    pub ensemble: Ensemble,
    /// Used by the invariant ensemble only.
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Dyson index: 1, 2 or 4.
    #[arg(long, default_value_t = 2)]
    pub beta: u8,
    /// Matrix size
    #[arg(long)]
    pub n: usize,
    /// Weight parameter N for the invariant ensemble (default: n).
    #[arg(long)]
    pub n_param: Option<usize>,
    /// Number of eigenvalue sets
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Seed; each draw or chain uses its own stream of this seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Metropolis sweeps per chain.
    #[arg(long, default_value_t = 2000)]
    pub steps: usize,
    /// Histogram grid `lo:hi:bins`.
    #[arg(long, default_value = "-2.5:2.5:50", allow_hyphen_values = true)]
    pub histogram: String,
    /// Bulk window `lo:hi` for spacing statistics (default: middle half of the support).
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Also write the batch as a binary record.
    #[arg(long)]
    pub batch_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Uniform grid `lo:hi:count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Invalid(format!("grid '{s}' must have the form lo:hi:count"));
        let [lo, hi, count] = parts[..] else {
            return Err(bad());
        };
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        if !lo.is_finite() || !hi.is_finite() || count == 0 || (count > 1 && !(hi > lo)) {
            return Err(bad());
        }
        Ok(Self { lo, hi, count })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.hi
                } else {
                    self.lo + step * i as f64
                }
            })
            .collect()
    }
}

/// Interval `lo:hi`.
pub fn parse_interval(s: &str) -> Result<(f64, f64)> {
    let bad = || {
        Error::Invalid(format!(
            "interval '{s}' must have the form lo:hi with lo < hi"
        ))
    };
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(hi > lo) {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Comma-separated finite reals.
pub fn parse_coefficients(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Invalid(format!("malformed coefficient '{t}' in '{s}'")))
        })
        .collect()
}

/// Comma-separated positive integers.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Invalid(format!("malformed size '{t}' in '{s}'")))
        })
        .collect()
}
