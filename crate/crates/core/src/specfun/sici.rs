use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use std::f64::consts::PI;

/// Sine integral `Si(x) = ∫_0^x sin(t)/t dt`.
pub fn si(x: f64) -> f64 {
    if x < 0.0 {
        return -si(-x);
    }
    if x == 0.0 {
        return 0.0;
    }
    if x < 2.0 {
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        for k in 1..60 {
            let kf = k as f64;
            term *= -x2 / ((2.0 * kf) * (2.0 * kf + 1.0));
            let add = term / (2.0 * kf + 1.0);
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        return sum;
    }
    // Lentz continued fraction for E1(ix).
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h *= Complex64::new(x.cos(), -x.sin());
    FRAC_PI_2 + h.im
}

/// `∫_0^t sin(πu)/(πu) du`.
pub fn sinc_integral(t: f64) -> f64 {
    si(PI * t) / PI
}
