//! Dense real polynomials in ascending-coefficient form.

/// Horner evaluation.
pub fn eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

pub fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &a)| k as f64 * a)
        .collect()
}

pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|&x| x * s).collect()
}

/// Drops trailing coefficients that are exactly zero.
pub fn trim(mut a: Vec<f64>) -> Vec<f64> {
    while a.len() > 1 && *a.last().unwrap() == 0.0 {
        a.pop();
    }
    a
}

pub fn degree(a: &[f64]) -> Option<usize> {
    a.iter().rposition(|&x| x != 0.0)
}

/// Quotient of synthetic division by `(x − r)`; the remainder is discarded.
pub fn deflate(a: &[f64], r: f64) -> Vec<f64> {
    let n = a.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut q = vec![0.0; n - 1];
    let mut carry = 0.0;
    for k in (1..n).rev() {
        carry = a[k] + carry * r;
        q[k - 1] = carry;
    }
    q
}

/// Polynomial square root of `p` (even degree, positive leading coefficient),
/// matching coefficients from the top down.
pub fn sqrt(p: &[f64]) -> Vec<f64> {
    let deg = degree(p).unwrap_or(0);
    let m = deg / 2;
    let mut h = vec![0.0; m + 1];
    h[m] = p[deg].max(0.0).sqrt();
    if h[m] == 0.0 {
        return h;
    }
    for k in (0..m).rev() {
        let target = p.get(m + k).copied().unwrap_or(0.0);
        let mut acc = 0.0;
        for i in k + 1..=m {
            let j = m + k - i;
            if j > k && j <= m {
                acc += h[i] * h[j];
            }
        }
        h[k] = (target - acc) / (2.0 * h[m]);
    }
    h
}

/// Upper bound on the modulus of the roots (Cauchy).
pub fn root_bound(a: &[f64]) -> f64 {
    let d = match degree(a) {
        Some(d) if d > 0 => d,
        _ => return 1.0,
    };
    let lead = a[d].abs();
    1.0 + a[..d].iter().map(|c| c.abs() / lead).fold(0.0, f64::max)
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = [1.0, -3.0, 2.0];
        assert_eq!(eval(&p, 2.0), 3.0);
        assert_eq!(derivative(&p), vec![-3.0, 4.0]);
        assert_eq!(mul(&[1.0, 1.0], &[-1.0, 1.0]), vec![-1.0, 0.0, 1.0]);
        assert_eq!(deflate(&[-2.0, 1.0, 1.0], 1.0), vec![2.0, 1.0]);
    }

    #[test]
    fn square_root_round_trip() {
        let h = [0.3, -1.0, 0.5, 2.0];
        let back = sqrt(&mul(&h, &h));
        for (a, b) in h.iter().zip(&back) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
