//! Numerical laboratory for random matrix universality.
//!
//! The crate evaluates the universal limiting correlation kernels (sine, Airy,
//! Bessel, Pearcey and the 2x2 matrix kernels of the orthogonal and symplectic
//! classes), solves for equilibrium measures of polynomial potentials, builds
//! finite-n Christoffel–Darboux kernels from recurrence coefficients, evaluates
//! the explicit objects of the Riemann–Hilbert steepest descent analysis, and
//! samples Gaussian and invariant ensembles by Monte Carlo.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod mc;
pub mod orthopoly;
pub mod parallel;
pub mod poly;
pub mod quad;
pub mod records;
pub mod rh;
pub mod specfun;

pub use error::{Error, Result};

/// Version string written into every output header.
pub const ARTIFACT_VERSION: &str = concat!("rmtlab ", env!("CARGO_PKG_VERSION"));
