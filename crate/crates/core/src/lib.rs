//! Transition amplitudes, probabilities and time-evolved wavefunctions for a
//! quantum particle whose trapping potential suddenly starts to move with
//! constant velocity.
//!
//! Scenarios: attractive delta well ([`delta`]), Pöschl–Teller wells
//! ([`poschl_teller`]), the harmonic oscillator ([`sho`]) and hydrogen
//! ([`hydrogen`]). [`evolution`] holds the scenario-independent machinery and
//! an independent split-step propagator used to cross-check it.

mod error;
pub mod delta;
pub mod evolution;
pub mod hydrogen;
pub mod numerics;
pub mod poschl_teller;
pub mod sho;

pub use error::{Error, Result};
