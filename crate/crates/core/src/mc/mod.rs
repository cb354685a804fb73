//! Monte Carlo sampling of Gaussian and invariant ensembles and the empirical
//! statistics used to cross-check kernel predictions.

mod gaussian;
mod metropolis;
mod stats;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gaussian::{gse_embedded_spectrum, sample_gaussian, MAX_GAUSSIAN_COUNT, MAX_GAUSSIAN_N};
pub use metropolis::{sample_invariant, InvariantRun, LogGas, MAX_INVARIANT_N};
pub use stats::{
    compare_to_kernel, empirical_density, fraction_below, local_statistics, poisson_resample,
    Distance, Histogram, SpacingSample,
};

/// Dyson index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Beta {
    One,
    Two,
    Four,
}

impl Beta {
    pub fn value(self) -> f64 {
        self.as_u8() as f64
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Beta::One => 1,
            Beta::Two => 2,
            Beta::Four => 4,
        }
    }

    pub fn from_u8(b: u8) -> Result<Self> {
        match b {
            1 => Ok(Beta::One),
            2 => Ok(Beta::Two),
            4 => Ok(Beta::Four),
            _ => Err(Error::Invalid(format!("beta must be 1, 2 or 4, got {b}"))),
        }
    }
}

/// Eigenvalue sets drawn from one ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub beta: Beta,
    pub n: usize,
    /// Scaling parameter `N` of the weight `e^{−N V}`.
    pub n_param: usize,
    pub seed: u64,
    /// Each set sorted ascending with `n` entries.
    pub eigenvalue_sets: Vec<Vec<f64>>,
}

impl SampleBatch {
    pub fn count(&self) -> usize {
        self.eigenvalue_sets.len()
    }

    pub fn all_eigenvalues(&self) -> impl Iterator<Item = f64> + '_ {
        self.eigenvalue_sets.iter().flatten().copied()
    }
}

/// Generator for stream `index` of `seed`. Streams are independent, so each
/// draw or chain is reproducible no matter which worker runs it.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
