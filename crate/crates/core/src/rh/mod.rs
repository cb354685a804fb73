//! Explicit objects of the Riemann–Hilbert steepest-descent analysis for
//! one-cut soft-edge measures: `g`, `φ`, the outer and Airy parametrices,
//! the conformal map at the edge and the kernel and recurrence asymptotics
//! they predict.

mod airy_model;
mod context;
mod cut;

pub use airy_model::{
    airy_asymptotic_residual, airy_branches, airy_jump_residual, airy_model, airy_model_in,
    edge_kernel_from_a, sector_of, Ray, Sector,
};
pub use context::{DescentContext, Endpoint, PhiVariant};
