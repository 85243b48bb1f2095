//! Special functions and quadrature for the singular slope integrals.

mod gamma;
mod quadrature;

pub use gamma::{beta, h_function, ln_gamma, BetaArgs};
pub use quadrature::{integrate, integrate_01, QuadratureConfig};
