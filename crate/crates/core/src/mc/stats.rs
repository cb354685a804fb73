use rand::Rng;
use serde::Serialize;

use super::{stream_rng, SampleBatch};
use crate::equilibrium::EquilibriumMeasure;
use crate::error::{Error, Result};

pub const MAX_BINS: usize = 1000;

/// Histogram normalised over its range; `outside` is the fraction of
/// eigenvalues that fell outside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub density: Vec<f64>,
    pub outside: f64,
}

impl Histogram {
    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.density.len() as f64
    }

    pub fn centers(&self) -> Vec<f64> {
        let w = self.width();
        (0..self.density.len())
            .map(|k| self.lo + (k as f64 + 0.5) * w)
            .collect()
    }

    /// Edges `(left, right)` of bin `k`.
    pub fn bin(&self, k: usize) -> (f64, f64) {
        let w = self.width();
        (self.lo + k as f64 * w, self.lo + (k + 1) as f64 * w)
    }

    pub fn mass(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.width()
    }

    /// Bin averages of the equilibrium density, for comparison with `density`.
    pub fn predicted_from(&self, mu: &EquilibriumMeasure) -> Vec<f64> {
        (0..self.density.len())
            .map(|k| {
                let (l, r) = self.bin(k);
                (mu.upper_mass(l) - mu.upper_mass(r)) / (r - l)
            })
            .collect()
    }
}

pub fn empirical_density(batch: &SampleBatch, bins: usize, range: (f64, f64)) -> Result<Histogram> {
    let (lo, hi) = range;
    if bins == 0 || bins > MAX_BINS {
        return Err(Error::Invalid(format!(
            "bins must lie in 1..={MAX_BINS}, got {bins}"
        )));
    }
    if !(hi > lo) {
        return Err(Error::Invalid(format!(
            "empty histogram range [{lo}, {hi}]"
        )));
    }
    let mut counts = vec![0usize; bins];
    let (mut inside, mut total) = (0usize, 0usize);
    let w = (hi - lo) / bins as f64;
    for x in batch.all_eigenvalues() {
        total += 1;
        if (lo..=hi).contains(&x) {
            counts[(((x - lo) / w) as usize).min(bins - 1)] += 1;
            inside += 1;
        }
    }
    let norm = if inside > 0 {
        1.0 / (inside as f64 * w)
    } else {
        0.0
    };
    let outside = if total > 0 {
        (total - inside) as f64 / total as f64
    } else {
        0.0
    };
    Ok(Histogram {
        lo,
        hi,
        density: counts.iter().map(|&c| c as f64 * norm).collect(),
        outside,
    })
}

/// Unfolded spacings inside a bulk window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpacingSample {
    pub spacings: Vec<f64>,
    /// Number of eigenvalues in the window, per set.
    pub per_set: Vec<usize>,
    /// Length of the window in unfolded units.
    pub span: f64,
}

impl SpacingSample {
    pub fn mean(&self) -> f64 {
        self.spacings.iter().sum::<f64>() / self.spacings.len() as f64
    }
}

/// Consecutive spacings in `[lo, hi]`, unfolded through `x ↦ n·μ((−∞, x])` so
/// that the mean spacing is one.
pub fn local_statistics(
    batch: &SampleBatch,
    mu: &EquilibriumMeasure,
    lo: f64,
    hi: f64,
) -> Result<SpacingSample> {
    let (a, b) = mu.support;
    if !(a < lo && lo < hi && hi < b) {
        return Err(Error::Domain(format!(
            "window [{lo}, {hi}] is not inside the bulk ({a}, {b})"
        )));
    }
    let n = batch.n as f64;
    let total = mu.mass();
    let unfold = |x: f64| n * (total - mu.upper_mass(x));
    let mut spacings = Vec::new();
    let mut per_set = Vec::with_capacity(batch.count());
    for set in &batch.eigenvalue_sets {
        let inside: Vec<f64> = set
            .iter()
            .copied()
            .filter(|x| (lo..=hi).contains(x))
            .map(unfold)
            .collect();
        spacings.extend(inside.windows(2).map(|p| p[1] - p[0]));
        per_set.push(inside.len());
    }
    if spacings.is_empty() {
        return Err(Error::EmptyWindow(format!("no spacings in [{lo}, {hi}]")));
    }
    Ok(SpacingSample {
        spacings,
        per_set,
        span: unfold(hi) - unfold(lo),
    })
}

/// Spacings of a Poisson null model: for each set, the same number of points
/// placed uniformly in the unfolded window.
pub fn poisson_resample(sample: &SpacingSample, seed: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(sample.spacings.len());
    for (k, &m) in sample.per_set.iter().enumerate() {
        let mut rng = stream_rng(seed, k as u64);
        let mut pts: Vec<f64> = (0..m).map(|_| rng.random::<f64>() * sample.span).collect();
        pts.sort_by(f64::total_cmp);
        out.extend(pts.windows(2).map(|p| p[1] - p[0]));
    }
    out
}

pub fn fraction_below(spacings: &[f64], s: f64) -> f64 {
    if spacings.is_empty() {
        return 0.0;
    }
    spacings.iter().filter(|&&x| x < s).count() as f64 / spacings.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Distance {
    pub sup: f64,
    pub l1: f64,
}

/// Sup and integrated `L¹` distance between a histogram and predicted bin values.
pub fn compare_to_kernel(empirical: &Histogram, predicted: &[f64]) -> Result<Distance> {
    if predicted.len() != empirical.density.len() {
        return Err(Error::GridMismatch(format!(
            "{} histogram bins vs {} predicted values",
            empirical.density.len(),
            predicted.len()
        )));
    }
    let diffs = empirical
        .density
        .iter()
        .zip(predicted)
        .map(|(e, p)| (e - p).abs());
    let (sup, sum) = diffs.fold((0.0f64, 0.0), |(m, s), d| (m.max(d), s + d));
    Ok(Distance {
        sup,
        l1: sum * empirical.width(),
    })
}
