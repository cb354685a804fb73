use super::{RecurrenceTable, WeightSpec};

const RESCALE_EVERY: usize = 8;
const DIAGONAL_GAP: f64 = 1e-7;

/// Orthonormal polynomials `p_0..=p_n` at `x` and their derivatives, as
/// mantissas with per-degree log scales; the true value of `p_k(x)·√w(x)` is
/// `value[k]·e^{scale[k]}`.
struct Scaled {
    value: Vec<f64>,
    slope: Vec<f64>,
    scale: Vec<f64>,
}

fn scaled_polys(t: &RecurrenceTable, w: &WeightSpec, x: f64, n: usize) -> Scaled {
    let mut value = vec![0.0; n + 1];
    let mut slope = vec![0.0; n + 1];
    let mut scale = vec![0.0; n + 1];
    let mut log_scale = 0.5 * (w.log_weight(x) - t.log_gamma_sq[0]);
    value[0] = 1.0;
    scale[0] = log_scale;
    for k in 0..n {
        let sa_next = t.a[k + 1].sqrt();
        let (pm, dm) = if k == 0 {
            (0.0, 0.0)
        } else {
            (value[k - 1], slope[k - 1])
        };
        let sa = t.a[k].sqrt();
        let shifted = x - t.b[k];
        value[k + 1] = (shifted * value[k] - sa * pm) / sa_next;
        slope[k + 1] = (shifted * slope[k] + value[k] - sa * dm) / sa_next;
        if (k + 1) % RESCALE_EVERY == 0 {
            let m = [value[k], value[k + 1], slope[k], slope[k + 1]]
                .iter()
                .fold(0.0f64, |acc, v| acc.max(v.abs()));
            if m > 0.0 && m.is_finite() {
                for j in [k, k + 1] {
                    value[j] /= m;
                    slope[j] /= m;
                }
                log_scale += m.ln();
                scale[k] = log_scale;
            }
        }
        scale[k + 1] = log_scale;
    }
    Scaled {
        value,
        slope,
        scale,
    }
}

/// `φ_k(x) = γ_k^{−1}P_k(x)e^{−NV(x)/2}` (with the weight's extra factor) for `k = 0..n`.
pub fn weighted_polys(t: &RecurrenceTable, w: &WeightSpec, x: f64, n: usize) -> Vec<f64> {
    assert!(n <= t.n_max, "degree {n} exceeds table size {}", t.n_max);
    if n == 0 {
        return Vec::new();
    }
    let s = scaled_polys(t, w, x, n - 1);
    s.value
        .iter()
        .zip(&s.scale)
        .map(|(v, l)| v * l.exp())
        .collect()
}

/// Christoffel–Darboux kernel `K_n(x, y)`.
pub fn cd_kernel(t: &RecurrenceTable, w: &WeightSpec, n: usize, x: f64, y: f64) -> f64 {
    assert!(n >= 1 && n <= t.n_max, "degree {n} outside 1..={}", t.n_max);
    let san = t.a[n].sqrt();
    if (x - y).abs() < DIAGONAL_GAP * (1.0 + x.abs()) {
        let m = 0.5 * (x + y);
        let s = scaled_polys(t, w, m, n);
        let core = s.slope[n] * s.value[n - 1] - s.slope[n - 1] * s.value[n];
        return san * core * (2.0 * s.scale[n]).exp();
    }
    let sx = scaled_polys(t, w, x, n);
    let sy = scaled_polys(t, w, y, n);
    let core = sx.value[n] * sy.value[n - 1] - sx.value[n - 1] * sy.value[n];
    san * core / (x - y) * (sx.scale[n] + sy.scale[n]).exp()
}

/// `K_n(x, y) = Σ_{k<n} φ_k(x)φ_k(y)` summed directly.
pub fn cd_kernel_sum(t: &RecurrenceTable, w: &WeightSpec, n: usize, x: f64, y: f64) -> f64 {
    assert!(n >= 1 && n <= t.n_max, "degree {n} outside 1..={}", t.n_max);
    let sx = scaled_polys(t, w, x, n - 1);
    let sy = scaled_polys(t, w, y, n - 1);
    (0..n)
        .map(|k| sx.value[k] * sy.value[k] * (sx.scale[k] + sy.scale[k]).exp())
        .sum()
}
