use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{stream_rng, Beta, SampleBatch};
use crate::error::{Error, Result};
use crate::parallel;

pub const MAX_GAUSSIAN_N: usize = 512;
pub const MAX_GAUSSIAN_COUNT: usize = 10_000;

fn normal<R: Rng>(rng: &mut R, var: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    z * var.sqrt()
}

/// Real symmetric matrix with off-diagonal variance `1/n`, diagonal `2/n`.
fn goe<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let nf = n as f64;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = normal(rng, 2.0 / nf);
        for j in i + 1..n {
            let x = normal(rng, 1.0 / nf);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m.symmetric_eigenvalues().iter().copied().collect()
}

/// Complex Hermitian matrix with `E|H_ij|² = 1/n`.
fn gue<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let nf = n as f64;
    let mut m = DMatrix::<C>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = C::new(normal(rng, 1.0 / nf), 0.0);
        for j in i + 1..n {
            let z = C::new(normal(rng, 0.5 / nf), normal(rng, 0.5 / nf));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m.symmetric_eigenvalues().iter().copied().collect()
}

/// `2n×2n` complex image `[[A, B], [−B̄, Ā]]` of a self-dual quaternion matrix
/// with `E|q_ij|² = 1/n` off the diagonal and diagonal variance `1/(2n)`.
fn gse_embedding<R: Rng>(n: usize, rng: &mut R) -> DMatrix<C> {
    let nf = n as f64;
    let mut a = DMatrix::<C>::zeros(n, n);
    let mut b = DMatrix::<C>::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = C::new(normal(rng, 0.5 / nf), 0.0);
        for j in i + 1..n {
            let v = 0.25 / nf;
            let z = C::new(normal(rng, v), normal(rng, v));
            let w = C::new(normal(rng, v), normal(rng, v));
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
            b[(i, j)] = w;
            b[(j, i)] = -w;
        }
    }
    let mut m = DMatrix::<C>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a[(i, j)];
            m[(i, j + n)] = b[(i, j)];
            m[(i + n, j)] = -b[(i, j)].conj();
            m[(i + n, j + n)] = a[(i, j)].conj();
        }
    }
    m
}

/// Full sorted spectrum (length `2n`) of one embedded symplectic draw.
pub fn gse_embedded_spectrum(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, 0);
    let mut ev: Vec<f64> = gse_embedding(n, &mut rng)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn gse<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut ev: Vec<f64> = gse_embedding(n, rng)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

/// Dense Gaussian ensemble draws, normalised so the spectrum fills `[−2, 2]`
/// (weight `e^{−n x²/2}` with `N = n`). Draw `k` uses stream `k` of `seed`.
pub fn sample_gaussian(beta: Beta, n: usize, count: usize, seed: u64) -> Result<SampleBatch> {
    if n == 0 || n > MAX_GAUSSIAN_N {
        return Err(Error::Invalid(format!(
            "n must lie in 1..={MAX_GAUSSIAN_N}, got {n}"
        )));
    }
    if count > MAX_GAUSSIAN_COUNT {
        return Err(Error::Invalid(format!(
            "count must be at most {MAX_GAUSSIAN_COUNT}, got {count}"
        )));
    }
    let eigenvalue_sets = parallel::map_range(count, |k| {
        let mut rng = stream_rng(seed, k as u64);
        let mut ev = match beta {
            Beta::One => goe(n, &mut rng),
            Beta::Two => gue(n, &mut rng),
            Beta::Four => gse(n, &mut rng),
        };
        ev.sort_by(f64::total_cmp);
        ev
    });
    Ok(SampleBatch {
        beta,
        n,
        n_param: n,
        seed,
        eigenvalue_sets,
    })
}
