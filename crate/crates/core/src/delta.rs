//! Attractive delta well `V(x) = −γ δ(x)` suddenly moving with velocity `v`.
//!
//! Length unit `1/β` with `β = mγ/ℏ²`; the Massey parameter is `θ = ℏv/γ`,
//! so `θβ = mv/ℏ`. One bound state `√β e^{−β|x|}` and two continuum
//! channels (even and odd) over `k > 0`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::evolution::{
    ChannelSpec, ContinuumAmplitude, Decomposition, BoundAmplitude, BoundAmplitudeSet, Eigenbasis, KGrid,
    MomentumRange, ProbabilityBudget, QuantumNumbers, UnitsConvention,
};
use crate::numerics::{integrate_adaptive, Domain, TailDecay, Tolerance};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaParams {
    pub gamma: f64,
    pub v: f64,
    pub units: UnitsConvention,
}

impl DeltaParams {
    pub fn new(gamma: f64, v: f64, units: UnitsConvention) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) || !v.is_finite() {
            return Err(Error::Argument(format!("need gamma > 0 and finite v, got gamma = {gamma}, v = {v}")));
        }
        Ok(DeltaParams { gamma, v, units })
    }

    /// Parameters with `ℏ = m = 1`, well strength `β`, and Massey parameter `θ`.
    pub fn from_theta(theta: f64, beta: f64) -> Result<Self> {
        DeltaParams::new(beta, theta * beta, UnitsConvention::default())
    }

    /// `mγ/ℏ²`
    pub fn beta(&self) -> f64 {
        self.units.mass * self.gamma / (self.units.hbar * self.units.hbar)
    }

    /// `ℏv/γ`
    pub fn theta(&self) -> f64 {
        self.units.hbar * self.v / self.gamma
    }

    /// `−γ² m / 2ℏ²`
    pub fn bound_energy(&self) -> f64 {
        -self.gamma * self.gamma * self.units.mass / (2.0 * self.units.hbar * self.units.hbar)
    }
}

/// Static eigenmodes of the delta well.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaBasis {
    params: DeltaParams,
    beta: f64,
}

pub fn delta_eigenmodes(params: DeltaParams) -> DeltaBasis {
    DeltaBasis { params, beta: params.beta() }
}

impl DeltaBasis {
    pub fn bound(&self, x: f64) -> f64 {
        self.beta.sqrt() * (-self.beta * x.abs()).exp()
    }

    pub fn even(&self, p: f64, x: f64) -> f64 {
        SQRT_2 * (p * (p * x).cos() - self.beta * (p * x.abs()).sin()) / self.beta.hypot(p)
    }

    pub fn odd(&self, p: f64, x: f64) -> f64 {
        SQRT_2 * (p * x).sin()
    }
}

impl Eigenbasis for DeltaBasis {
    fn units(&self) -> UnitsConvention {
        UnitsConvention { length_scale: 1.0 / self.beta, ..self.params.units }
    }
    fn bound_count(&self) -> usize {
        1
    }
    fn bound_label(&self, _n: usize) -> QuantumNumbers {
        vec![0]
    }
    fn bound_energy(&self, _n: usize) -> f64 {
        self.params.bound_energy()
    }
    fn bound_mode(&self, _n: usize, x: f64) -> f64 {
        self.bound(x)
    }
    fn channels(&self) -> Vec<ChannelSpec> {
        vec![
            ChannelSpec { name: "even", range: MomentumRange::HalfLine },
            ChannelSpec { name: "odd", range: MomentumRange::HalfLine },
        ]
    }
    fn continuum_mode(&self, channel: usize, k: f64, x: f64) -> Complex64 {
        let value = if channel == 0 { self.even(k, x) } else { self.odd(k, x) };
        Complex64::new(value, 0.0)
    }
    fn kinks(&self) -> Vec<f64> {
        vec![0.0]
    }
}

/// `4/(θ² + 4)`
pub fn q11(theta: f64) -> f64 {
    4.0 / (theta * theta + 4.0)
}

fn denominator(k: f64, theta: f64, beta: f64) -> f64 {
    let (b2, t2, k2) = (beta * beta, theta * theta, k * k);
    b2 * b2 * (t2 + 1.0).powi(2) + k2 * k2 - 2.0 * b2 * (t2 - 1.0) * k2
}

/// Even-channel continuum amplitude (real).
pub fn p1_even(k: f64, theta: f64, beta: f64) -> f64 {
    4.0 * SQRT_2 * beta.powf(3.5) * theta * theta * k / (beta.hypot(k) * denominator(k, theta, beta))
}

/// Odd-channel continuum amplitude (purely imaginary).
pub fn p1_odd(k: f64, theta: f64, beta: f64) -> Complex64 {
    Complex64::new(0.0, -4.0 * SQRT_2 * beta.powf(2.5) * theta * k / denominator(k, theta, beta))
}

/// `(|P_e|² + |P_o|²)/2` at momentum `k`, integrated over the whole line
/// with `dk/2π` it gives the continuum probability.
pub fn continuum_integrand(k: f64, theta: f64, beta: f64) -> f64 {
    let (b2, t2, k2) = (beta * beta, theta * theta, k * k);
    16.0 * beta.powi(5) * t2 * k2 * (b2 * (t2 + 1.0) + k2) / ((b2 + k2) * denominator(k, theta, beta).powi(2))
}

/// Continuum probability by quadrature of [`continuum_integrand`].
pub fn continuum_probability(theta: f64, beta: f64, tol: &Tolerance) -> Result<f64> {
    let scale = beta * (1.0 + theta * theta).sqrt();
    let res = integrate_adaptive(
        |k| continuum_integrand(k, theta, beta),
        Domain::Line { center: 0.0, scale, decay: TailDecay::Algebraic },
        tol,
    )?;
    Ok(res.value / (2.0 * PI))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaProbabilities {
    /// Closed forms: bound `16/(θ²+4)²`, continuum `1 − 16/(θ²+4)²`.
    pub budget: ProbabilityBudget,
    pub continuum_numeric: f64,
}

impl DeltaProbabilities {
    /// `|closed form − quadrature|` for the continuum probability.
    pub fn continuum_discrepancy(&self) -> f64 {
        (self.budget.continuum - self.continuum_numeric).abs()
    }
}

pub fn delta_probabilities(theta: f64) -> Result<DeltaProbabilities> {
    let bound = q11(theta).powi(2);
    let budget = ProbabilityBudget::new(vec![(vec![0], bound)], 1.0 - bound);
    let continuum_numeric = continuum_probability(theta, 1.0, &Tolerance::new(1e-14, 1e-13))?;
    Ok(DeltaProbabilities { budget, continuum_numeric })
}

/// Momentum cutoff beyond which `∫|P|² dk/2π < tail` (odd channel dominates,
/// `|P_o|² ≈ 32β⁵θ²/k⁶`).
pub fn k_cutoff(theta: f64, beta: f64, tail: f64) -> f64 {
    let k = beta * (32.0 * theta * theta / (10.0 * PI * tail)).powf(0.2);
    k.max(20.0 * beta)
}

/// Decomposition of the bound state from the closed-form amplitudes.
pub fn decomposition(theta: f64, beta: f64, k_grid: &KGrid) -> Result<Decomposition> {
    let ks = k_grid.points_for(MomentumRange::HalfLine);
    let even = ks.iter().map(|&k| Complex64::new(p1_even(k, theta, beta), 0.0)).collect();
    let odd = ks.iter().map(|&k| p1_odd(k, theta, beta)).collect();
    Ok(Decomposition {
        bound: BoundAmplitudeSet {
            entries: vec![BoundAmplitude { quantum_numbers: vec![0], amplitude: Complex64::new(q11(theta), 0.0) }],
            velocity_param: theta,
        },
        continuum: vec![
            ContinuumAmplitude::new("even", ks.clone(), even)?,
            ContinuumAmplitude::new("odd", ks, odd)?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{decompose, DecompositionOptions};

    #[test]
    fn closed_forms_at_reference_points() {
        assert_eq!(q11(0.0), 1.0);
        assert_eq!(q11(2.0), 0.5);
        for k in [0.1, 1.0, 7.0] {
            assert_eq!(p1_even(k, 0.0, 1.0), 0.0);
            assert_eq!(p1_odd(k, 0.0, 1.0).norm(), 0.0);
            assert_eq!(p1_odd(k, 1.3, 0.7).re, 0.0);
        }
        // linear vanishing at k -> 0
        let ratio = p1_odd(1e-6, 1.0, 1.0).im / p1_odd(2e-6, 1.0, 1.0).im;
        assert!((ratio - 0.5).abs() < 1e-9);
    }

    #[test]
    fn bound_state_and_parities() {
        let basis = delta_eigenmodes(DeltaParams::from_theta(1.0, 2.5).unwrap());
        assert_eq!(basis.bound(0.0), 2.5f64.sqrt());
        for x in [0.3, 1.7] {
            assert!((basis.even(1.2, x) - basis.even(1.2, -x)).abs() < 1e-15);
            assert!((basis.odd(1.2, x) + basis.odd(1.2, -x)).abs() < 1e-15);
        }
    }

    #[test]
    fn params_relate_theta_and_beta() {
        let units = UnitsConvention::new(1.3, 0.7, 1.0).unwrap();
        let p = DeltaParams::new(2.0, 3.0, units).unwrap();
        assert!((p.theta() * p.beta() - units.mass * p.v / units.hbar).abs() < 1e-14);
    }

    #[test]
    fn probabilities_at_theta_two() {
        let p = delta_probabilities(2.0).unwrap();
        assert_eq!(p.budget.bound_total(), 0.25);
        assert_eq!(p.budget.continuum, 0.75);
        assert!(p.continuum_discrepancy() < 1e-8);
        let zero = delta_probabilities(0.0).unwrap();
        assert_eq!(zero.budget.bound_total(), 1.0);
        assert_eq!(zero.continuum_numeric, 0.0);
    }

    #[test]
    fn closed_forms_match_overlap_quadrature() {
        let (theta, beta) = (1.0, 1.0);
        let basis = delta_eigenmodes(DeltaParams::from_theta(theta, beta).unwrap());
        let opts = DecompositionOptions { k_grid: KGrid { k_max: 2.0, points: 3 }, ..Default::default() };
        let d = decompose(&basis, 0, theta * beta, theta, &opts).unwrap();
        assert!((d.bound.entries[0].amplitude - q11(theta)).norm() < 1e-10);
        for (i, &k) in d.continuum[0].k_grid().iter().enumerate() {
            assert!((d.continuum[0].values()[i] - p1_even(k, theta, beta)).norm() < 1e-10);
            assert!((d.continuum[1].values()[i] - p1_odd(k, theta, beta)).norm() < 1e-10);
        }
    }
}
