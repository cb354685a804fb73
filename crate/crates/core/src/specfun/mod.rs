//! Special functions: complex Airy, Bessel J of real order, the sine-integral
//! primitive and log-gamma.

mod airy;
mod bessel;
mod gamma;
mod sici;

pub use airy::{airy, airy_real, airy_tail};
pub use bessel::bessel_j;
pub use gamma::{gamma, ln_gamma};
pub use sici::{si, sinc_integral};

/// A function value together with its first derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionValuePair<T> {
    pub value: T,
    pub derivative: T,
}

impl<T> FunctionValuePair<T> {
    pub fn new(value: T, derivative: T) -> Self {
        Self { value, derivative }
    }
}
