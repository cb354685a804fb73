use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::FunctionValuePair;
use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

const AI0: f64 = 0.355_028_053_887_817_239_260_063_186_004;
const AIP0: f64 = -0.258_819_403_792_806_8;

const SERIES_RADIUS: f64 = 2.0;
const ASYMPTOTIC_RADIUS: f64 = 9.0;
const STEP: f64 = 0.5;

type C = Complex64;

/// Ai(z) and Ai'(z) for complex `z`.
///
/// Power series near the origin, the large-argument expansion (with the
/// three-term connection formula near the negative axis) far out, and Taylor
/// integration of `y'' = z y` along the ray in between.
pub fn airy(z: C) -> Result<FunctionValuePair<C>> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("airy: non-finite argument {z}")));
    }
    let r = z.norm();
    let (a, d) = if r <= SERIES_RADIUS {
        maclaurin(z)
    } else if r >= ASYMPTOTIC_RADIUS {
        far_field(z)?
    } else {
        intermediate(z)?
    };
    Ok(FunctionValuePair::new(a, d))
}

/// Real-argument convenience wrapper around [`airy`].
pub fn airy_real(x: f64) -> Result<FunctionValuePair<f64>> {
    let p = airy(C::new(x, 0.0))?;
    Ok(FunctionValuePair::new(p.value.re, p.derivative.re))
}

fn maclaurin(z: C) -> (C, C) {
    let z3 = z * z * z;
    let mut f = C::new(1.0, 0.0);
    let mut g = z;
    let mut fp = C::new(0.0, 0.0);
    let mut gp = C::new(1.0, 0.0);
    let mut t = C::new(1.0, 0.0);
    let mut s = z;
    let mut u = z * z * 0.5;
    let mut v = C::new(1.0, 0.0);
    for k in 1..200 {
        let kf = k as f64;
        t = t * z3 / ((3.0 * kf - 1.0) * 3.0 * kf);
        s = s * z3 / (3.0 * kf * (3.0 * kf + 1.0));
        if k > 1 {
            u = u * z3 / ((3.0 * kf - 3.0) * (3.0 * kf - 1.0));
        }
        v = v * z3 / ((3.0 * kf - 2.0) * 3.0 * kf);
        f += t;
        g += s;
        fp += u;
        gp += v;
        let tiny = 1e-18 * (f.norm() + g.norm() + fp.norm() + gp.norm());
        if t.norm() + s.norm() + u.norm() + v.norm() < tiny {
            break;
        }
    }
    (f * AI0 + g * AIP0, fp * AI0 + gp * AIP0)
}

/// Large-|z| expansion, valid for |arg z| <= 2π/3 as used here.
fn asymptotic(z: C) -> Result<(C, C)> {
    let zeta = z.powf(1.5) * (2.0 / 3.0);
    if -zeta.re > 700.0 {
        return Err(Error::Range(format!("airy: |Ai({z})| overflows")));
    }
    let mut su = C::new(1.0, 0.0);
    let mut sv = C::new(1.0, 0.0);
    let mut u = 1.0f64;
    let inv = -1.0 / zeta;
    let mut pw = C::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        pw *= inv;
        let tu = pw * u;
        let size = tu.norm();
        if size > last {
            break;
        }
        su += tu;
        sv += pw * v;
        last = size;
        if size < 1e-17 {
            break;
        }
    }
    let e = (-zeta).exp();
    let q = z.powf(0.25);
    let c = 0.5 / PI.sqrt();
    Ok((e * su * c / q, -(e * sv * c * q)))
}

fn omega() -> C {
    C::from_polar(1.0, 2.0 * PI / 3.0)
}

fn far_field(z: C) -> Result<(C, C)> {
    if z.arg().abs() <= 2.0 * PI / 3.0 {
        return asymptotic(z);
    }
    let w = omega();
    let w2 = w * w;
    let (a1, d1) = asymptotic(w * z)?;
    let (a2, d2) = asymptotic(w2 * z)?;
    Ok((-(w * a1) - w2 * a2, -(w2 * d1) - w * d2))
}

/// Taylor step of `y'' = z y` from `z0` by `delta`.
fn taylor_step(z0: C, delta: C, y: C, dy: C) -> (C, C) {
    let d2 = delta * delta;
    let d3 = d2 * delta;
    // Scaled coefficients d_k = c_k δ^k with (k+2)(k+1) c_{k+2} = z0 c_k + c_{k-1}.
    let mut prev = C::new(0.0, 0.0);
    let mut cur = y;
    let mut next = dy * delta;
    let mut val = cur + next;
    let mut der = next;
    for k in 0..120usize {
        let new = (z0 * d2 * cur + d3 * prev) / (((k + 2) * (k + 1)) as f64);
        val += new;
        der += new * ((k + 2) as f64);
        prev = cur;
        cur = next;
        next = new;
        if k > 4 && new.norm() < 1e-18 * val.norm().max(1e-300) {
            break;
        }
    }
    (val, der / delta)
}

fn intermediate(z: C) -> Result<(C, C)> {
    let r = z.norm();
    let dir = z / r;
    let (r0, start) = if z.arg().abs() <= PI / 3.0 {
        let p = dir * ASYMPTOTIC_RADIUS;
        (ASYMPTOTIC_RADIUS, asymptotic(p)?)
    } else {
        let p = dir * SERIES_RADIUS;
        (SERIES_RADIUS, maclaurin(p))
    };
    let span = r - r0;
    let n = ((span.abs() / STEP).ceil() as usize).max(1);
    let h = span / n as f64;
    let (mut y, mut dy) = start;
    for i in 0..n {
        let z0 = dir * (r0 + i as f64 * h);
        let (a, b) = taylor_step(z0, dir * h, y, dy);
        y = a;
        dy = b;
    }
    Ok((y, dy))
}

const TAIL_LO: f64 = -40.0;
const TAIL_HI: f64 = 14.0;
const TAIL_H: f64 = 0.02;

struct TailTable {
    f: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

fn ai_pair(x: f64) -> (f64, f64) {
    let p = airy_real(x).expect("Ai is finite on the tail table range");
    (p.value, p.derivative)
}

fn tail_asymptotic(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.75)) * (1.0 - 41.0 / (48.0 * zeta))
}

fn tail_table() -> &'static TailTable {
    static TABLE: OnceLock<TailTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = ((TAIL_HI - TAIL_LO) / TAIL_H).round() as usize;
        let rule = gauss_legendre(10);
        let mut f = vec![0.0; n + 1];
        let mut d1 = vec![0.0; n + 1];
        let mut d2 = vec![0.0; n + 1];
        f[n] = tail_asymptotic(TAIL_HI);
        for i in (0..=n).rev() {
            let x = TAIL_LO + i as f64 * TAIL_H;
            let (a, ap) = ai_pair(x);
            d1[i] = -a;
            d2[i] = -ap;
            if i < n {
                let cell = rule.integrate(x, x + TAIL_H, |t| ai_pair(t).0);
                f[i] = f[i + 1] + cell;
            }
        }
        TailTable { f, d1, d2 }
    })
}

/// `∫_x^∞ Ai(t) dt`.
///
/// Tabulated once on a fine grid with quintic Hermite interpolation; outside
/// the table the large-x expansion or extra quadrature panels take over.
pub fn airy_tail(x: f64) -> f64 {
    if x >= TAIL_HI {
        return tail_asymptotic(x);
    }
    let tab = tail_table();
    if x < TAIL_LO {
        let panels = ((TAIL_LO - x) / 0.5).ceil() as usize;
        let extra = crate::quad::composite(x, TAIL_LO, panels, 16, |t| ai_pair(t).0);
        return tab.f[0] + extra;
    }
    let pos = (x - TAIL_LO) / TAIL_H;
    let i = (pos.floor() as usize).min(tab.f.len() - 2);
    let t = pos - i as f64;
    let h = TAIL_H;
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    let h3 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h5 = 0.5 * (t3 - 2.0 * t4 + t5);
    tab.f[i] * h0
        + h * tab.d1[i] * h1
        + h * h * tab.d2[i] * h2
        + tab.f[i + 1] * h3
        + h * tab.d1[i + 1] * h4
        + h * h * tab.d2[i + 1] * h5
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    // Reference values from 30-digit arithmetic.
    const REAL: [(f64, f64, f64); 9] = [
        (1.0, 0.135_292_416_312_881_41, -0.159_147_441_296_793_2),
        (-1.0, 0.535_560_883_292_352_1, -0.010_160_567_116_645_21),
        (2.0, 0.034_924_130_423_274_38, -0.053_090_384_433_653_63),
        (-2.0, 0.227_407_428_201_685_58, 0.618_259_020_741_691),
        (5.0, 1.083_444_281_360_744_2e-4, -2.474_138_908_684_625e-4),
        (-5.0, 0.350_761_009_024_114_33, 0.327_192_818_554_443_15),
        (
            10.0,
            1.104_753_255_289_868_6e-10,
            -3.520_633_676_738_923_7e-10,
        ),
        (-10.0, 0.040_241_238_486_443_19, 0.996_265_044_132_79),
        (-20.0, -0.176_406_127_077_984_7, 0.892_862_856_736_471_3),
    ];

    #[test]
    fn real_axis_matches_reference() {
        let p = airy_real(0.0).unwrap();
        assert!((p.value - AI0).abs() < 1e-15 && (p.derivative - AIP0).abs() < 1e-15);
        for &(x, a, d) in &REAL {
            let p = airy_real(x).unwrap();
            assert!(
                (p.value - a).abs() <= 1e-10 * a.abs(),
                "Ai({x}) = {}",
                p.value
            );
            assert!(
                (p.derivative - d).abs() <= 1e-10 * d.abs(),
                "Ai'({x}) = {}",
                p.derivative
            );
        }
        let p = airy_real(20.0).unwrap();
        assert!((p.value / 1.691_672_868_670_540_4e-27 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn complex_matches_reference() {
        let cases = [
            (
                c(3.0, 4.0),
                c(0.014_554_546_690_944_635, -0.047_435_251_515_492_834),
                c(-0.075_209_961_195_903_04, 0.082_364_077_155_537_8),
            ),
            (
                c(-6.0, 2.0),
                c(-18.015_579_029_207_558, 16.558_336_557_727_27),
                c(47.484_646_192_296_88, 38.481_818_735_390_4),
            ),
            (
                c(0.0, 8.0),
                c(435.623_142_141_602_56, 7_206.344_748_904_13),
                c(13_311.589_972_522_32, -15_274.898_369_529_776),
            ),
            (
                c(-25.0, -10.0),
                c(-5.863_560_869_534_449e20, -6.668_856_609_383_682e20),
                c(3.966_058_964_164_835e21, -2.337_069_856_977_337_5e21),
            ),
        ];
        for (z, a, d) in cases {
            let p = airy(z).unwrap();
            assert!(
                (p.value - a).norm() <= 1e-8 * a.norm(),
                "Ai({z}) = {}",
                p.value
            );
            assert!(
                (p.derivative - d).norm() <= 1e-8 * d.norm(),
                "Ai'({z}) = {}",
                p.derivative
            );
        }
    }

    #[test]
    fn leading_asymptotic_at_ten() {
        let a = airy_real(10.0).unwrap().value;
        let scaled = a * 2.0 * PI.sqrt() * 10f64.powf(0.25) * (2.0 / 3.0 * 10f64.powf(1.5)).exp();
        // First correction term of the expansion is -5/(72ζ) ≈ -3.3e-3.
        let zeta = 2.0 / 3.0 * 10f64.powf(1.5);
        assert!((scaled - (1.0 - 5.0 / (72.0 * zeta))).abs() < 1e-4);
        assert!((scaled - 1.0).abs() < 4e-3);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(airy(c(0.0, 900.0)), Err(Error::Range(_))));
        assert!(airy(c(-800.0, 0.0)).is_ok());
    }

    #[test]
    fn tail_reference_values() {
        assert!((airy_tail(0.0) - 1.0 / 3.0).abs() < 1e-9);
        assert!((airy_tail(-5.0) - 1.051_215_537_881_161).abs() < 1e-9);
        assert!((airy_tail(2.0) - 0.020_800_577_552_653_642).abs() < 1e-9);
        // The total integral is 1, but at -40 the oscillating remainder is still ~0.035.
        assert!((airy_tail(-40.0) - 0.965_302_518_122_412_1).abs() < 1e-9);
        assert!(airy_tail(20.0) < 1e-12);
    }
}
