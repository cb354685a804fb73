use super::gamma::ln_gamma;
use super::FunctionValuePair;
use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 2.0;

/// J_α(x) and J_α'(x) for α > -1 and x >= 0.
///
/// Ascending series for small x; otherwise Miller's backward recurrence
/// normalised by the Neumann-type sum for (x/2)^α.
pub fn bessel_j(alpha: f64, x: f64) -> Result<FunctionValuePair<f64>> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "bessel_j: order {alpha} must exceed -1"
        )));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "bessel_j: argument {x} must be finite and >= 0"
        )));
    }
    if x == 0.0 {
        return at_origin(alpha);
    }
    let (j0, j1) = if x <= SERIES_LIMIT {
        (series(alpha, x), series(alpha + 1.0, x))
    } else {
        miller(alpha, x)
    };
    Ok(FunctionValuePair::new(j0, alpha / x * j0 - j1))
}

fn at_origin(alpha: f64) -> Result<FunctionValuePair<f64>> {
    if alpha == 0.0 {
        Ok(FunctionValuePair::new(1.0, 0.0))
    } else if alpha == 1.0 {
        Ok(FunctionValuePair::new(0.0, 0.5))
    } else if alpha > 1.0 {
        Ok(FunctionValuePair::new(0.0, 0.0))
    } else {
        Err(Error::Range(format!(
            "bessel_j: J_{alpha} or its derivative is unbounded at 0"
        )))
    }
}

fn series(alpha: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = (alpha * half.ln() - ln_gamma(alpha + 1.0)).exp();
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + alpha));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn miller(alpha: f64, x: f64) -> (f64, f64) {
    let mut m = (x + 25.0 + 4.0 * x.sqrt()).ceil() as usize;
    if m % 2 == 1 {
        m += 1;
    }
    // vals[k] holds the unnormalised J_{α+k}.
    let mut vals = vec![0.0f64; m + 2];
    vals[m + 1] = 0.0;
    vals[m] = 1e-300;
    let mut r = vec![0.0f64; m / 2 + 1];
    r[0] = 1.0;
    if m / 2 >= 1 {
        r[1] = 1.0;
    }
    for k in 1..m / 2 {
        let kf = k as f64;
        r[k + 1] = r[k] * (alpha + kf) / (kf + 1.0);
    }
    let weight = |k: usize| -> f64 {
        if k == 0 {
            1.0
        } else {
            (alpha + k as f64) * r[k / 2]
        }
    };
    let mut sum = weight(m) * vals[m];
    for k in (0..m).rev() {
        let nu = alpha + (k + 1) as f64;
        vals[k] = 2.0 * nu / x * vals[k + 1] - vals[k + 2];
        if k % 2 == 0 {
            sum += weight(k) * vals[k];
        }
        if vals[k].abs() > 1e250 {
            for v in vals[k..].iter_mut() {
                *v *= 1e-250;
            }
            sum *= 1e-250;
        }
    }
    let log_pref = alpha * (0.5 * x).ln() - ln_gamma(alpha + 1.0);
    let scale = log_pref.exp() / sum;
    (vals[0] * scale, vals[1] * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from 30-digit arithmetic: (α, x, J, J').
    const CASES: [(f64, f64, f64, f64); 9] = [
        (0.0, 1.0, 0.765_197_686_557_966_6, -0.440_050_585_744_933_5),
        (
            0.0,
            10.0,
            -0.245_935_764_451_348_35,
            -0.043_472_746_168_861_44,
        ),
        (
            0.5,
            3.0,
            0.065_008_182_877_375_78,
            -0.466_883_517_940_862_47,
        ),
        (
            2.5,
            30.0,
            0.141_202_858_799_282_13,
            -0.039_034_850_611_117_87,
        ),
        (8.0, 0.5, 3.758_223_154_797_61e-10, 6.002_710_280_086_847e-9),
        (-0.5, 4.0, -0.260_766_076_677_178_8, 0.334_516_272_876_286_8),
        (
            0.0,
            50.0,
            0.055_812_327_669_251_816,
            0.097_511_828_125_175_14,
        ),
        (
            3.3,
            17.0,
            0.066_747_890_224_106_27,
            0.178_140_557_136_902_58,
        ),
        (
            0.0,
            1000.0,
            0.024_786_686_152_420_176,
            -0.004_728_311_907_089_524,
        ),
    ];

    #[test]
    fn matches_reference() {
        for &(a, x, j, d) in &CASES {
            let p = bessel_j(a, x).unwrap();
            let tol = if x <= 50.0 { 1e-10 } else { 1e-8 };
            assert!(
                (p.value - j).abs() <= tol * j.abs(),
                "J_{a}({x}) = {}",
                p.value
            );
            assert!(
                (p.derivative - d).abs() <= tol * d.abs(),
                "J'_{a}({x}) = {}",
                p.derivative
            );
        }
    }

    #[test]
    fn special_points_and_errors() {
        let p = bessel_j(0.5, std::f64::consts::PI).unwrap();
        assert!(p.value.abs() < 1e-12);
        assert_eq!(
            bessel_j(0.0, 0.0).unwrap(),
            FunctionValuePair::new(1.0, 0.0)
        );
        assert!(matches!(bessel_j(-1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(-0.5, 0.0), Err(Error::Range(_))));
    }

    #[test]
    fn series_and_recurrence_agree_at_switch() {
        for a in [0.0, 0.3, 2.0, 7.5] {
            let lo = bessel_j(a, SERIES_LIMIT).unwrap();
            let hi = miller(a, SERIES_LIMIT);
            assert!((lo.value - hi.0).abs() < 1e-13 * lo.value.abs().max(1e-3));
        }
    }
}
