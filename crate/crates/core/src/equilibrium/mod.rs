//! Equilibrium measures of polynomial external fields: the moment
//! fixed-point solver, density and log-potential evaluation, singular-point
//! classification and a brute-force grid oracle.

mod classify;
mod endpoints;
mod grid;
mod measure;
mod potential;
mod solve;

pub use classify::{classify, SingularPoint, SingularType, INTERIOR_TOL};
pub use grid::{grid_energy_minimize, grid_energy_minimize_on, DiscreteMeasure};
pub use measure::{EquilibriumMeasure, QFunction};
pub use potential::Potential;
pub use solve::solve_equilibrium;

use crate::error::Result;

/// `q_V(x)` for the measure `mu` of `v`.
pub fn qv(v: &Potential, mu: &EquilibriumMeasure, x: f64) -> Result<f64> {
    debug_assert_eq!(v, &mu.potential);
    mu.qv(x)
}

/// `(1/π)√(q_V⁻(x))`.
pub fn density(mu: &EquilibriumMeasure, x: f64) -> f64 {
    mu.density(x)
}

/// `2∫log(1/|x−y|)dμ(y) + V(x) − ℓ`.
pub fn effective_potential(mu: &EquilibriumMeasure, v: &Potential, x: f64) -> f64 {
    debug_assert_eq!(v, &mu.potential);
    mu.effective_potential(x)
}

#[cfg(test)]
mod tests;
