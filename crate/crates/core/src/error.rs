use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Adaptive quadrature ran out of evaluations before meeting its tolerance.
    #[error(
        "quadrature did not converge after {evaluations} evaluations: \
         best estimate {best} with error estimate {error_estimate:.3e}"
    )]
    Quadrature {
        best: Complex64,
        error_estimate: f64,
        evaluations: usize,
    },

    /// A power or asymptotic series failed to settle.
    #[error("{function} did not converge after {terms} terms (partial sum {partial})")]
    Series {
        function: &'static str,
        terms: usize,
        partial: Complex64,
    },

    /// The stored momentum grid cannot represent the requested frame.
    #[error("momentum grid under-resolved: {0}")]
    Resolution(String),

    /// The wavefunction reached the edge of the spatial grid.
    #[error("wavefunction leaked to the grid boundary (|psi| = {amplitude:.3e} > {tolerance:.1e})")]
    DomainTooSmall { amplitude: f64, tolerance: f64 },

    /// Truncating a discrete spectrum dropped more probability than allowed.
    #[error("truncation at n_max = {n_max} leaves tail {tail:.3e}; need n_max >= {suggested}")]
    Truncation {
        n_max: usize,
        tail: f64,
        suggested: usize,
    },

    /// A complex power landed on an unexpected branch.
    #[error("branch check failed at u = {at}: imaginary part {imag:.3e} vs real part {real:.3e}")]
    Branch { at: f64, real: f64, imag: f64 },
}
