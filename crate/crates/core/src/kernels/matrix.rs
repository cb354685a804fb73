use std::sync::OnceLock;

use super::scalar::{ai, airy_kernel_dy, airy_kernel_from, sinc, sinc_derivative};
use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::specfun::{airy_tail, sinc_integral};

/// Symmetry class of a 2×2 matrix kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Beta {
    One,
    Four,
}

impl Beta {
    pub fn from_int(beta: u32) -> Result<Self> {
        match beta {
            1 => Ok(Beta::One),
            4 => Ok(Beta::Four),
            other => Err(Error::Invalid(format!(
                "matrix kernels exist for beta 1 or 4, not {other}"
            ))),
        }
    }
}

/// Entries `[[K11, K12], [K21, K22]]` of a matrix kernel at one point pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixKernelValue {
    pub entries: [[f64; 2]; 2],
}

impl MatrixKernelValue {
    pub fn new(k11: f64, k12: f64, k21: f64, k22: f64) -> Self {
        Self {
            entries: [[k11, k12], [k21, k22]],
        }
    }

    /// Negated transpose; equals the value at the swapped arguments.
    pub fn neg_transpose(&self) -> Self {
        let e = self.entries;
        Self::new(-e[0][0], -e[1][0], -e[0][1], -e[1][1])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.entries[i][j] - other.entries[i][j]).abs());
            }
        }
        m
    }
}

fn sgn(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else if t < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Orthogonal or symplectic bulk matrix kernel.
pub fn matrix_kernel_bulk(beta: Beta, x: f64, y: f64) -> MatrixKernelValue {
    let u = x - y;
    match beta {
        Beta::One => {
            let s = sinc(u);
            MatrixKernelValue::new(-sinc_derivative(u), s, -s, sinc_integral(u) - 0.5 * sgn(u))
        }
        Beta::Four => {
            let s = sinc(2.0 * u);
            MatrixKernelValue::new(
                -2.0 * sinc_derivative(2.0 * u),
                s,
                -s,
                0.5 * sinc_integral(2.0 * u),
            )
        }
    }
}

const GRID_LO: f64 = -40.0;
const GRID_HI: f64 = 14.0;
const PANEL: f64 = 0.5;
const ORDER: usize = 16;

struct AiryNodes {
    t: Vec<f64>,
    w: Vec<f64>,
    ai: Vec<(f64, f64)>,
}

fn airy_nodes() -> &'static AiryNodes {
    static NODES: OnceLock<AiryNodes> = OnceLock::new();
    NODES.get_or_init(|| {
        let rule = gauss_legendre(ORDER);
        let panels = ((GRID_HI - GRID_LO) / PANEL).round() as usize;
        let mut t = Vec::with_capacity(panels * ORDER);
        let mut w = Vec::with_capacity(panels * ORDER);
        for p in 0..panels {
            let lo = GRID_LO + p as f64 * PANEL;
            for (node, weight) in rule.mapped(lo, lo + PANEL) {
                t.push(node);
                w.push(weight);
            }
        }
        let ai = crate::parallel::map(&t, |&s| ai(s).expect("Ai finite on node grid"));
        AiryNodes { t, w, ai }
    })
}

/// `∫_x^∞ K^Ai(t, y) dt`.
///
/// Composite Gauss–Legendre on a fixed panel grid whose Airy values are
/// computed once; beyond the grid the integrand is below 1e-15.
pub fn airy_kernel_integral(x: f64, y: f64) -> Result<f64> {
    if x < GRID_LO || y < GRID_LO {
        return Err(Error::Domain(format!(
            "airy_kernel_integral: arguments below {GRID_LO}"
        )));
    }
    let ay = ai(y)?;
    let rule = gauss_legendre(ORDER);
    let mut total = 0.0;
    if x >= GRID_HI {
        for p in 0..16 {
            let lo = x + p as f64 * PANEL;
            for (t, w) in rule.mapped(lo, lo + PANEL) {
                total += w * airy_kernel_from(t, y, ai(t)?, ay);
            }
        }
        return Ok(total);
    }
    let first = ((x - GRID_LO) / PANEL).floor() as usize;
    let edge = GRID_LO + (first + 1) as f64 * PANEL;
    if edge > x {
        for (t, w) in rule.mapped(x, edge) {
            total += w * airy_kernel_from(t, y, ai(t)?, ay);
        }
    }
    let nodes = airy_nodes();
    let start = (first + 1) * ORDER;
    for i in start..nodes.t.len() {
        total += nodes.w[i] * airy_kernel_from(nodes.t[i], y, nodes.ai[i], ay);
    }
    Ok(total)
}

/// Orthogonal or symplectic soft-edge matrix kernel.
///
/// `K21(x, y)` is taken as `-K12(y, x)`, which makes the assembled block
/// matrix skew-symmetric and coincides with `-K12(x, y)` on the diagonal.
pub fn matrix_kernel_edge(beta: Beta, x: f64, y: f64) -> Result<MatrixKernelValue> {
    if x < -30.0 || y < -30.0 {
        return Err(Error::Domain(format!(
            "matrix_kernel_edge: ({x}, {y}) below -30"
        )));
    }
    let ax = ai(x)?;
    let ay = ai(y)?;
    let (tx, ty) = (airy_tail(x), airy_tail(y));
    let kxy = if y < x {
        airy_kernel_from(y, x, ay, ax)
    } else {
        airy_kernel_from(x, y, ax, ay)
    };
    let dy = airy_kernel_dy(x, y)?;
    let ixy = airy_kernel_integral(x, y)?;
    Ok(match beta {
        Beta::One => {
            let k11 = dy + 0.5 * ax.0 * ay.0;
            let k12 = kxy + 0.5 * ax.0 * (1.0 - ty);
            let k21 = -(kxy + 0.5 * ay.0 * (1.0 - tx));
            let k22 = -ixy - 0.5 * (tx - ty) + 0.5 * tx * ty - 0.5 * sgn(x - y);
            MatrixKernelValue::new(k11, k12, k21, k22)
        }
        Beta::Four => {
            let k11 = 0.5 * dy + 0.25 * ax.0 * ay.0;
            let k12 = 0.5 * kxy - 0.25 * ax.0 * ty;
            let k21 = -(0.5 * kxy - 0.25 * ay.0 * tx);
            let k22 = -0.5 * ixy + 0.25 * tx * ty;
            MatrixKernelValue::new(k11, k12, k21, k22)
        }
    })
}
