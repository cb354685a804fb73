//! Small dense linear-algebra helpers: determinants, Pfaffians and the
//! complex 2×2 matrices used by the Riemann–Hilbert code.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Matrix2x2C = Matrix2<Complex64>;

/// Determinant by partially pivoted LU.
pub fn det(m: &DMatrix<f64>) -> f64 {
    assert!(m.is_square());
    if m.nrows() == 0 {
        return 1.0;
    }
    m.clone().lu().determinant()
}

/// Largest entry of `A + Aᵀ` relative to `max(1, max |A_ij|)`.
pub fn skew_defect(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let scale = a.amax().max(1.0);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] + a[(j, i)]).abs());
        }
    }
    worst / scale
}

/// Pfaffian of a skew-symmetric matrix of even order.
///
/// Cofactor expansion up to order 8, Parlett–Reid style `LTLᵀ` reduction
/// with pivoting above that.
pub fn pfaffian(a: &DMatrix<f64>) -> Result<f64> {
    let n = a.nrows();
    if !a.is_square() || n % 2 == 1 {
        return Err(Error::Invalid(format!(
            "pfaffian needs an even square matrix, got {}x{}",
            n,
            a.ncols()
        )));
    }
    if n <= 8 {
        let idx: Vec<usize> = (0..n).collect();
        Ok(pfaffian_expand(a, &idx))
    } else {
        Ok(pfaffian_reduce(a.clone()))
    }
}

/// Recursive expansion along the first row of the principal submatrix `idx`.
pub fn pfaffian_expand(a: &DMatrix<f64>, idx: &[usize]) -> f64 {
    match idx.len() {
        0 => 1.0,
        2 => a[(idx[0], idx[1])],
        _ => {
            let first = idx[0];
            let mut total = 0.0;
            for j in 1..idx.len() {
                let entry = a[(first, idx[j])];
                if entry == 0.0 {
                    continue;
                }
                let rest: Vec<usize> = idx[1..]
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k + 1 != j)
                    .map(|(_, &v)| v)
                    .collect();
                let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                total += sign * entry * pfaffian_expand(a, &rest);
            }
            total
        }
    }
}

/// Skew-symmetric Gaussian reduction with row/column pivoting.
pub fn pfaffian_reduce(mut a: DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut pf = 1.0;
    let mut k = 0;
    while k + 1 < n {
        let mut kp = k + 1;
        for i in k + 2..n {
            if a[(i, k)].abs() > a[(kp, k)].abs() {
                kp = i;
            }
        }
        if kp != k + 1 {
            a.swap_rows(k + 1, kp);
            a.swap_columns(k + 1, kp);
            pf = -pf;
        }
        if a[(k + 1, k)] == 0.0 {
            return 0.0;
        }
        let piv = a[(k, k + 1)];
        pf *= piv;
        if k + 2 < n {
            let tau: Vec<f64> = (k + 2..n).map(|j| a[(k, j)] / piv).collect();
            let col: Vec<f64> = (k + 2..n).map(|i| a[(i, k + 1)]).collect();
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    a[(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
        k += 2;
    }
    pf
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_skew(n: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v: f64 = rng.random_range(-1.0..1.0);
                a[(i, j)] = v;
                a[(j, i)] = -v;
            }
        }
        a
    }

    #[test]
    fn base_cases() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 3.5, -3.5, 0.0]);
        assert_eq!(pfaffian(&a).unwrap(), 3.5);
        // Pf of the 4x4 case is a12 a34 - a13 a24 + a14 a23.
        let b = DMatrix::from_row_slice(
            4,
            4,
            &[
                0., 1., 2., 3., -1., 0., 4., 5., -2., -4., 0., 6., -3., -5., -6., 0.,
            ],
        );
        assert_eq!(pfaffian(&b).unwrap(), 1.0 * 6.0 - 2.0 * 5.0 + 3.0 * 4.0);
        assert!(pfaffian(&DMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn expansion_and_reduction_agree() {
        for (n, seed) in [(4, 1), (6, 2), (8, 3)] {
            let a = random_skew(n, seed);
            let e = pfaffian_expand(&a, &(0..n).collect::<Vec<_>>());
            let r = pfaffian_reduce(a.clone());
            assert!((e - r).abs() < 1e-12 * e.abs().max(1.0), "{e} vs {r}");
        }
    }

    #[test]
    fn square_is_determinant() {
        for (n, seed) in [(6, 4), (10, 5), (16, 6)] {
            let a = random_skew(n, seed);
            let pf = pfaffian(&a).unwrap();
            let d = det(&a);
            assert!((pf * pf - d).abs() < 1e-10 * d.abs().max(1.0));
        }
    }
}
