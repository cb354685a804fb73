use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::{stream_rng, Beta, SampleBatch};
use crate::equilibrium::Potential;
use crate::error::{Error, Result};
use crate::orthopoly::WeightSpec;
use crate::parallel;

pub const MAX_INVARIANT_N: usize = 128;
/// Independent chains per run; fixed so results do not depend on the worker count.
const CHAINS: usize = 16;
const TARGET_RATE: f64 = 0.3;
const RATE_BOUNDS: (f64, f64) = (0.1, 0.6);

/// Log-density `β Σ_{i<j} log|x_i − x_j| + Σ log w(x_j)` of the eigenvalue gas.
#[derive(Debug, Clone)]
pub struct LogGas {
    pub beta: f64,
    weight: WeightSpec,
}

impl LogGas {
    pub fn new(v: &Potential, beta: Beta, n_param: usize) -> Result<Self> {
        Ok(Self {
            beta: beta.value(),
            weight: WeightSpec::new(v.clone(), n_param as f64)?,
        })
    }

    pub fn log_density(&self, x: &[f64]) -> f64 {
        let mut s: f64 = x.iter().map(|&t| self.weight.log_weight(t)).sum();
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                s += self.beta * (x[i] - x[j]).abs().ln();
            }
        }
        s
    }

    /// Change in log-density when coordinate `i` moves to `y`; `O(n)`.
    pub fn delta(&self, x: &[f64], i: usize, y: f64) -> f64 {
        let lw = self.weight.log_weight(y);
        if lw == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let xi = x[i];
        let mut s = lw - self.weight.log_weight(xi);
        for (j, &xj) in x.iter().enumerate() {
            if j != i {
                s += self.beta * ((y - xj).abs() / (xi - xj).abs()).ln();
            }
        }
        s
    }
}

/// Metropolis acceptance for a log-density change `d`.
pub(super) fn accept<R: Rng>(rng: &mut R, d: f64) -> bool {
    d >= 0.0 || rng.random::<f64>() < d.exp()
}

/// Output of [`sample_invariant`].
#[derive(Debug, Clone, Serialize)]
pub struct InvariantRun {
    #[serde(skip)]
    pub batch: SampleBatch,
    /// Post-burn-in acceptance rate, averaged over chains.
    pub acceptance_rate: f64,
    /// Frozen proposal widths, one per chain.
    pub proposal_widths: Vec<f64>,
    /// Sweeps between recorded states.
    pub spacing: usize,
}

struct Chain {
    sets: Vec<Vec<f64>>,
    rate: f64,
    width: f64,
    spacing: usize,
}

fn sweep<R: Rng>(gas: &LogGas, x: &mut [f64], width: f64, rng: &mut R) -> usize {
    let mut accepted = 0;
    for i in 0..x.len() {
        let z: f64 = rng.sample(StandardNormal);
        let y = x[i] + width * z;
        if accept(rng, gas.delta(x, i, y)) {
            x[i] = y;
            accepted += 1;
        }
    }
    accepted
}

fn run_chain(
    gas: &LogGas,
    n: usize,
    hard: bool,
    steps: usize,
    samples: usize,
    seed: u64,
    index: u64,
) -> Chain {
    let mut rng = stream_rng(seed, index);
    let mut x: Vec<f64> = (0..n)
        .map(|i| {
            let t = (i as f64 + 0.5) / n as f64;
            if hard {
                2.0 * t
            } else {
                2.0 * t - 1.0
            }
        })
        .collect();
    let burn = steps / 2;
    let mut log_width = (1.0 / n as f64).ln();
    for t in 0..burn {
        let rate = sweep(gas, &mut x, log_width.exp(), &mut rng) as f64 / n as f64;
        log_width += (rate - TARGET_RATE) / (1.0 + t as f64).powf(0.6);
    }
    let width = log_width.exp();
    let spacing = ((steps - burn) / samples.max(1)).max(1);
    let mut sets = Vec::with_capacity(samples);
    let mut accepted = 0usize;
    for _ in 0..samples {
        for _ in 0..spacing {
            accepted += sweep(gas, &mut x, width, &mut rng);
        }
        let mut s = x.clone();
        s.sort_by(f64::total_cmp);
        sets.push(s);
    }
    let proposals = (samples * spacing * n).max(1);
    Chain {
        sets,
        rate: accepted as f64 / proposals as f64,
        width,
        spacing,
    }
}

/// Random-walk Metropolis samples of the eigenvalue gas with weight `e^{−N V}`.
///
/// `steps` sweeps per chain; the first half is burn-in, during which the
/// proposal width is tuned toward acceptance 0.3 and then frozen.
pub fn sample_invariant(
    v: &Potential,
    beta: Beta,
    n: usize,
    n_param: usize,
    count: usize,
    steps: usize,
    seed: u64,
) -> Result<InvariantRun> {
    if !(2..=MAX_INVARIANT_N).contains(&n) {
        return Err(Error::Invalid(format!(
            "n must lie in 2..={MAX_INVARIANT_N}, got {n}"
        )));
    }
    if n_param == 0 || count == 0 || steps < 2 {
        return Err(Error::Invalid(
            "N, count and steps must be positive (steps ≥ 2)".into(),
        ));
    }
    let gas = LogGas::new(v, beta, n_param)?;
    let chains = CHAINS.min(count);
    let share = |c: usize| count / chains + usize::from(c < count % chains);
    let runs = parallel::map_range(chains, |c| {
        run_chain(&gas, n, v.hard_edge, steps, share(c), seed, c as u64)
    });
    let acceptance_rate = runs.iter().map(|r| r.rate).sum::<f64>() / chains as f64;
    if !(RATE_BOUNDS.0..=RATE_BOUNDS.1).contains(&acceptance_rate) {
        return Err(Error::AcceptanceRate(acceptance_rate));
    }
    let proposal_widths = runs.iter().map(|r| r.width).collect();
    let spacing = runs[0].spacing;
    let eigenvalue_sets = runs.into_iter().flat_map(|r| r.sets).collect();
    let batch = SampleBatch {
        beta,
        n,
        n_param,
        seed,
        eigenvalue_sets,
    };
    Ok(InvariantRun {
        batch,
        acceptance_rate,
        proposal_widths,
        spacing,
    })
}
