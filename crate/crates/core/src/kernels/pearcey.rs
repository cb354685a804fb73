use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

type C = Complex64;

const TARGET: f64 = 1e-6;

/// Placement of the integration contours in the Pearcey double integral.
///
/// `rays` lists the four ξ-rays as `(angle, orientation)`, with orientation
/// −1 for rays running in from infinity and +1 for rays running out. The
/// η-contour is the line through 0 at `eta_angle`, run upwards.
#[derive(Debug, Clone, Copy)]
pub struct PearceyContour {
    pub eta_angle: f64,
    pub rays: [(f64, f64); 4],
}

impl PearceyContour {
    /// Rays at ±π/4, ±3π/4 and the imaginary axis.
    pub const STANDARD: Self = Self {
        eta_angle: FRAC_PI_2,
        rays: [
            (FRAC_PI_4, -1.0),
            (5.0 * FRAC_PI_4, -1.0),
            (-FRAC_PI_4, 1.0),
            (3.0 * FRAC_PI_4, 1.0),
        ],
    };

    /// Every ray turned by a different amount inside its sector of decay.
    pub const ROTATED: Self = Self {
        eta_angle: FRAC_PI_2 + 0.1,
        rays: [
            (FRAC_PI_4 + 0.15, -1.0),
            (5.0 * FRAC_PI_4 - 0.1, -1.0),
            (-FRAC_PI_4 + 0.12, 1.0),
            (3.0 * FRAC_PI_4 - 0.15, 1.0),
        ],
    };
}

struct Resolution {
    radius: f64,
    angle_nodes: usize,
    panel: f64,
}

fn start_resolution(x: f64, y: f64, s: f64) -> Resolution {
    let growth = x.abs() + y.abs();
    let mut radius: f64 = 2.0;
    while radius.powi(4) / 8.0 - growth * radius - 0.5 * s.abs() * radius * radius < 45.0 {
        radius += 0.25;
    }
    let scale = 1.0 + (growth + s.abs()) / 6.0;
    Resolution {
        radius,
        angle_nodes: (48.0 * scale).ceil() as usize,
        panel: 0.5 / scale,
    }
}

/// Radial Gauss–Legendre nodes on [0, radius].
fn radial_nodes(radius: f64, panel: f64) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(16);
    let panels = (radius / panel).ceil() as usize;
    let h = radius / panels as f64;
    (0..panels)
        .flat_map(|p| {
            rule.mapped(p as f64 * h, (p + 1) as f64 * h)
                .collect::<Vec<_>>()
        })
        .collect()
}

/// One evaluation of the double integral at a fixed resolution.
///
/// With η = e^{iφ} ρ cos ψ and ξ = e^{iθ} ρ sin ψ the Jacobian ρ cancels the
/// 1/(η − ξ) singularity at the common point 0.
fn double_integral(x: f64, y: f64, s: f64, contour: &PearceyContour, res: &Resolution) -> C {
    let rule = gauss_legendre(res.angle_nodes);
    let radial = radial_nodes(res.radius, res.panel);
    let e_eta = C::from_polar(1.0, contour.eta_angle);
    let mut total = C::new(0.0, 0.0);
    for &(theta, orientation) in &contour.rays {
        let e_xi = C::from_polar(1.0, theta);
        let mut ray = C::new(0.0, 0.0);
        for (psi, wpsi) in rule.mapped(0.0, PI) {
            let (sp, cp) = psi.sin_cos();
            let den = e_eta * cp - e_xi * sp;
            let mut inner = C::new(0.0, 0.0);
            for &(rho, wr) in &radial {
                let eta = e_eta * (rho * cp);
                let xi = e_xi * (rho * sp);
                let eta2 = eta * eta;
                let xi2 = xi * xi;
                let expo = -eta2 * eta2 / 4.0 + s / 2.0 * eta2 - eta * y + xi2 * xi2 / 4.0
                    - s / 2.0 * xi2
                    + xi * x;
                inner += expo.exp() * wr;
            }
            ray += inner * wpsi / den;
        }
        total += ray * (orientation * e_xi * e_eta);
    }
    total / (C::new(0.0, 2.0 * PI) * C::new(0.0, 2.0 * PI))
}

/// Pearcey kernel from the double-integral representation on `contour`.
///
/// Refines radius and node counts until two successive levels agree to
/// 1e-6; reports non-convergence otherwise.
pub fn pearcey_kernel_on(x: f64, y: f64, s: f64, contour: &PearceyContour) -> Result<f64> {
    let mut res = start_resolution(x, y, s);
    let mut prev = double_integral(x, y, s, contour, &res);
    for _ in 0..5 {
        res = Resolution {
            radius: res.radius + 1.0,
            angle_nodes: res.angle_nodes * 3 / 2,
            panel: res.panel * 0.7,
        };
        let next = double_integral(x, y, s, contour, &res);
        if (next - prev).norm() < 0.1 * TARGET {
            return Ok(next.re);
        }
        prev = next;
    }
    Err(Error::NonConvergence(format!(
        "pearcey_kernel({x}, {y}, {s}): refinement did not settle"
    )))
}

/// Pearcey kernel on the standard contours.
pub fn pearcey_kernel(x: f64, y: f64, s: f64) -> Result<f64> {
    pearcey_kernel_on(x, y, s, &PearceyContour::STANDARD)
}

fn single_radius(x: f64, s: f64) -> f64 {
    let mut r: f64 = 2.0;
    while r.powi(4) / 4.0 - x.abs() * r - 0.5 * s.abs() * r * r < 45.0 {
        r += 0.25;
    }
    r
}

/// k-th derivative of `p(x) = (1/2πi) ∫_C exp(ξ⁴/4 − sξ²/2 + ξx) dξ`.
pub fn pearcey_p(x: f64, s: f64, k: u32) -> f64 {
    let radial = radial_nodes(single_radius(x, s) + 1.0, 0.2);
    let mut total = C::new(0.0, 0.0);
    for &(theta, orientation) in &PearceyContour::STANDARD.rays {
        let e = C::from_polar(1.0, theta);
        let mut ray = C::new(0.0, 0.0);
        for &(r, w) in &radial {
            let xi = e * r;
            let xi2 = xi * xi;
            ray += (xi2 * xi2 / 4.0 - s / 2.0 * xi2 + xi * x).exp() * xi.powu(k) * w;
        }
        total += ray * e * orientation;
    }
    (total / C::new(0.0, 2.0 * PI)).re
}

/// k-th derivative of `q(y) = (1/2πi) ∫_{−i∞}^{i∞} exp(−η⁴/4 + sη²/2 − ηy) dη`.
pub fn pearcey_q(y: f64, s: f64, k: u32) -> f64 {
    let half = radial_nodes(single_radius(y, s) + 1.0, 0.2);
    let mut total = C::new(0.0, 0.0);
    for &(r, w) in &half {
        for u in [r, -r] {
            let eta = C::new(0.0, u);
            let eta2 = eta * eta;
            total += (-eta2 * eta2 / 4.0 + s / 2.0 * eta2 - eta * y).exp() * (-eta).powu(k) * w;
        }
    }
    // dη = i du, and the 1/(2πi) prefactor cancels the i.
    total.re / (2.0 * PI)
}

/// Pearcey kernel through the p, q form; a cross-check of the double integral.
pub fn pearcey_kernel_ode_form(x: f64, y: f64, s: f64) -> f64 {
    let p: Vec<f64> = (0..3).map(|k| pearcey_p(x, s, k)).collect();
    let q: Vec<f64> = (0..3).map(|k| pearcey_q(y, s, k)).collect();
    (p[0] * q[2] - p[1] * q[1] + p[2] * q[0] - s * p[0] * q[0]) / (x - y)
}

/// Residual of `p''' + x p − s p' = 0`, the equation the contour-defined p satisfies.
pub fn pearcey_p_residual(x: f64, s: f64) -> f64 {
    pearcey_p(x, s, 3) + x * pearcey_p(x, s, 0) - s * pearcey_p(x, s, 1)
}
