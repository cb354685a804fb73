//! Orthogonal polynomials for varying weights and their Christoffel–Darboux kernels.

mod kernel;
mod scaling;
mod stieltjes;
mod weight;

pub use kernel::{cd_kernel, cd_kernel_sum, weighted_polys};
pub use scaling::{rescaled_kernel, scaling_constant, KernelGrid, Regime, ScalingWindow};
pub use stieltjes::{recurrence_table, RecurrenceTable, MAX_DEGREE};
pub use weight::WeightSpec;

#[cfg(test)]
mod tests;
