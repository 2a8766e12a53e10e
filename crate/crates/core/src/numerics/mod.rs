//! Numerical substrate: special functions, adaptive quadrature and
//! Richardson extrapolation.

mod dd;
mod gamma;
mod hyp1f1;
mod quadrature;
mod richardson;
mod special;

pub use gamma::{gamma_abs_complex, ln_gamma_complex};
pub use hyp1f1::{hyp1f1_complex, SERIES_SWITCH_RADIUS};
pub use quadrature::{
    integrate_adaptive, trapezoid_uniform, Domain, QuadValue, QuadratureResult, TailDecay,
    Tolerance,
};
pub use richardson::{
    rational_to_decimal, richardson_extrapolate, richardson_extrapolate_exact,
    AccelerationTable, ExactAccelerationTable,
};
pub use special::{assoc_legendre, assoc_legendre_tanh, hermite, laguerre_assoc, spherical_bessel};
