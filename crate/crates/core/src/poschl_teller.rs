//! Pöschl–Teller well `V(x) = −ℏ²λ(λ+1)/(2a²m) sech²(x/a)` suddenly moving
//! with velocity `v`; `κ = a m v/ℏ`.
//!
//! Bound states are `ϕ_j = (𝒩_j/√a) P_λ^j(tanh(x/a))` (Condon–Shortley
//! phase) with energy `−j²ℏ²/2a²m`, `j = 1..λ`. They are indexed here by
//! `n = 1..λ` in order of increasing energy, so `n = 1` is the ground
//! state and `j = λ + 1 − n`. The normalizations `𝒩_j` are computed by
//! quadrature. Continuum modes are available in closed form for `λ = 1, 2`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::evolution::{
    decompose, reconstruct, split_step_propagate, BoundAmplitude, BoundAmplitudeSet, ChannelSpec, ContinuumAmplitude,
    Decomposition, DecompositionOptions, Eigenbasis, KGrid, MomentumRange, QuantumNumbers, SpatialGrid,
    SplitStepOptions, UnitsConvention, WavefunctionFrame,
};
use crate::numerics::{assoc_legendre_tanh, integrate_adaptive, Domain, TailDecay, Tolerance};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PTParams {
    pub lambda: u32,
    pub a: f64,
    pub kappa: f64,
    pub units: UnitsConvention,
}

impl PTParams {
    pub fn new(lambda: u32, a: f64, kappa: f64) -> Result<Self> {
        if lambda == 0 || !(a > 0.0 && a.is_finite()) || !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::Argument(format!(
                "need lambda >= 1, a > 0, kappa >= 0; got lambda = {lambda}, a = {a}, kappa = {kappa}"
            )));
        }
        Ok(PTParams { lambda, a, kappa, units: UnitsConvention { length_scale: a, ..Default::default() } })
    }

    /// `κℏ/(a m)`
    pub fn velocity(&self) -> f64 {
        self.kappa * self.units.hbar / (self.a * self.units.mass)
    }

    /// `E_j = −j²ℏ²/2a²m`
    pub fn energy(&self, j: u32) -> f64 {
        let j = j as f64;
        -j * j * self.units.hbar * self.units.hbar / (2.0 * self.a * self.a * self.units.mass)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoschlTellerBasis {
    params: PTParams,
    /// `𝒩_j` for `j = 1..=λ`, at index `j − 1`.
    norms: Vec<f64>,
}

pub fn pt_eigenmodes(params: PTParams) -> Result<PoschlTellerBasis> {
    let tol = Tolerance::new(1e-15, 1e-14);
    let norms = (1..=params.lambda)
        .map(|j| {
            let f = |s: f64| assoc_legendre_tanh(params.lambda, j, s).unwrap_or(f64::NAN).powi(2);
            let res = integrate_adaptive(f, Domain::Line { center: 0.0, scale: 1.0, decay: TailDecay::Exponential }, &tol)?;
            Ok(1.0 / res.value.sqrt())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PoschlTellerBasis { params, norms })
}

impl PoschlTellerBasis {
    pub fn params(&self) -> &PTParams {
        &self.params
    }

    /// `𝒩_j`
    pub fn normalization(&self, j: u32) -> f64 {
        self.norms[j as usize - 1]
    }

    /// Legendre order `j` of bound state `n` (1 = ground).
    pub fn legendre_order(&self, n: u32) -> u32 {
        self.params.lambda + 1 - n
    }

    /// `ϕ_j(x)` in the Legendre labelling.
    pub fn phi_j(&self, j: u32, x: f64) -> f64 {
        let a = self.params.a;
        let p = assoc_legendre_tanh(self.params.lambda, j, x / a).unwrap_or(f64::NAN);
        self.normalization(j) * p / a.sqrt()
    }

    /// Continuum mode `ϕ_k(x)`, normalized to `2πδ(k − k′)`.
    pub fn phi_k(&self, k: f64, x: f64) -> Result<Complex64> {
        let a = self.params.a;
        let (t, q) = ((x / a).tanh(), Complex64::new(0.0, a * k));
        let shape = match self.params.lambda {
            1 => (q - t) / (1.0 + q),
            2 => (3.0 * t * t - 1.0 + q * q - 3.0 * q * t) / ((1.0 - q) * (2.0 - q)),
            l => return Err(Error::Argument(format!("no closed-form continuum for lambda = {l}"))),
        };
        Ok(shape * Complex64::from_polar(1.0, k * x))
    }

    pub fn potential_at(&self, x: f64) -> f64 {
        let (l, a, u) = (self.params.lambda as f64, self.params.a, self.params.units);
        -u.hbar * u.hbar * l * (l + 1.0) / (2.0 * a * a * u.mass) / (x / a).cosh().powi(2)
    }
}

impl Eigenbasis for PoschlTellerBasis {
    fn units(&self) -> UnitsConvention {
        self.params.units
    }
    fn bound_count(&self) -> usize {
        self.params.lambda as usize
    }
    fn bound_label(&self, n: usize) -> QuantumNumbers {
        vec![n as u32 + 1]
    }
    fn bound_energy(&self, n: usize) -> f64 {
        self.params.energy(self.legendre_order(n as u32 + 1))
    }
    fn bound_mode(&self, n: usize, x: f64) -> f64 {
        self.phi_j(self.legendre_order(n as u32 + 1), x)
    }
    fn channels(&self) -> Vec<ChannelSpec> {
        if self.params.lambda <= 2 {
            vec![ChannelSpec { name: "transmitted", range: MomentumRange::FullLine }]
        } else {
            Vec::new()
        }
    }
    fn continuum_mode(&self, _channel: usize, k: f64, x: f64) -> Complex64 {
        self.phi_k(k, x).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
    fn potential(&self, x: f64) -> Option<f64> {
        Some(self.potential_at(x))
    }
}

/// `y / sinh y`, equal to 1 at `y = 0`.
fn y_csch_y(y: f64) -> f64 {
    if y.abs() < 1e-4 {
        1.0 - y * y / 6.0
    } else {
        y / y.sinh()
    }
}

/// `(πκ/2) csch(πκ/2)`
pub fn pt_q11(kappa: f64) -> f64 {
    y_csch_y(0.5 * PI * kappa)
}

/// `π√a κ / (√2 (ak + i)) · sech(π(ak + κ)/2)`
pub fn pt_p1(k: f64, kappa: f64, a: f64) -> Complex64 {
    let sech = 1.0 / (0.5 * PI * (a * k + kappa)).cosh();
    PI * a.sqrt() * kappa * sech / (SQRT_2 * Complex64::new(a * k, 1.0))
}

/// `∫ |P₁(k)|² dk/2π` for `λ = 1` by adaptive quadrature.
pub fn pt_continuum_probability_lambda1(kappa: f64, a: f64) -> Result<f64> {
    let res = integrate_adaptive(
        |k: f64| pt_p1(k, kappa, a).norm_sqr(),
        Domain::Line { center: -kappa / a, scale: 1.0 / a, decay: TailDecay::Exponential },
        &Tolerance::new(1e-14, 1e-13),
    )?;
    Ok(res.value / (2.0 * PI))
}

/// `κ = √(λ² − μ²)`
pub fn pt_resonance_kappa(lambda: u32, mu: u32) -> Result<f64> {
    if mu == 0 || mu >= lambda {
        return Err(Error::Argument(format!("need 1 <= mu < lambda, got mu = {mu}, lambda = {lambda}")));
    }
    Ok(((lambda * lambda - mu * mu) as f64).sqrt())
}

/// `λ = 1` decomposition of the ground state from the closed forms.
pub fn lambda1_decomposition(kappa: f64, a: f64, k_grid: &KGrid) -> Result<Decomposition> {
    let ks = k_grid.points_for(MomentumRange::FullLine);
    let values = ks.iter().map(|&k| pt_p1(k, kappa, a)).collect();
    Ok(Decomposition {
        bound: BoundAmplitudeSet {
            entries: vec![BoundAmplitude { quantum_numbers: vec![1], amplitude: Complex64::new(pt_q11(kappa), 0.0) }],
            velocity_param: kappa,
        },
        continuum: vec![ContinuumAmplitude::new("transmitted", ks, values)?],
    })
}

/// `λ = 2`: ground state decomposed by overlap quadrature, continuum on `k_grid`.
pub fn pt_amplitudes_lambda2(kappa: f64, a: f64, k_grid: &KGrid) -> Result<Decomposition> {
    let params = PTParams::new(2, a, kappa)?;
    let basis = pt_eigenmodes(params)?;
    let opts = DecompositionOptions { k_grid: *k_grid, ..Default::default() };
    decompose(&basis, 0, params.velocity(), kappa, &opts)
}

/// Ground-state decomposition for `λ = 1, 2`.
pub fn pt_decomposition(lambda: u32, kappa: f64, a: f64, k_grid: &KGrid) -> Result<Decomposition> {
    match lambda {
        1 => lambda1_decomposition(kappa, a, k_grid),
        2 => pt_amplitudes_lambda2(kappa, a, k_grid),
        l => Err(Error::Argument(format!("no closed-form continuum for lambda = {l}"))),
    }
}

/// L² distance between the spectral reconstruction and the split-step
/// propagation of the ground state, at each of `times`.
pub fn split_step_agreement(
    lambda: u32,
    kappa: f64,
    a: f64,
    times: &[f64],
    grid: &SpatialGrid,
    k_grid: &KGrid,
    opts: &SplitStepOptions,
) -> Result<Vec<(f64, f64)>> {
    let params = PTParams::new(lambda, a, kappa)?;
    let basis = pt_eigenmodes(params)?;
    let v = params.velocity();
    let decomposition = pt_decomposition(lambda, kappa, a, k_grid)?;
    let mut times = times.to_vec();
    times.sort_by(|x, y| x.total_cmp(y));
    let mut frame = WavefunctionFrame::from_fn(*grid, 0.0, |x| Complex64::new(basis.bound_mode(0, x), 0.0));
    times
        .iter()
        .map(|&t| {
            frame = split_step_propagate(&frame, |x| basis.potential_at(x), v, t, params.units, opts)?;
            let spectral = reconstruct(&basis, &decomposition, v, t, grid)?;
            Ok((t, spectral.l2_distance(&frame)?))
        })
        .collect()
}

/// Bound-state probabilities `|Q₁ₙ|²` from the ground state, `n = 1..=λ`.
pub fn bound_probabilities(basis: &PoschlTellerBasis, kappa: f64) -> Result<Vec<f64>> {
    let p = basis.params();
    let q = p.units.boost_wavenumber(PTParams { kappa, ..*p }.velocity());
    let tol = Tolerance::new(1e-14, 1e-12);
    (0..basis.bound_count())
        .map(|n| {
            let f = |x: f64| Complex64::from_polar(basis.bound_mode(n, x) * basis.bound_mode(0, x), -q * x);
            let res = integrate_adaptive(f, Domain::Line { center: 0.0, scale: p.a, decay: TailDecay::Exponential }, &tol)?;
            Ok(res.value.norm_sqr())
        })
        .collect()
}

/// One row of a bound-probability sweep.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SweepPoint {
    pub kappa: f64,
    /// `|Q₁ₙ|²` for `n = 1..=λ`.
    pub bound: Vec<f64>,
}

/// `|Q₁ₙ(κ)|²` over the given `κ` values.
pub fn bound_probability_sweep(lambda: u32, a: f64, kappas: &[f64]) -> Result<Vec<SweepPoint>> {
    let basis = pt_eigenmodes(PTParams::new(lambda, a, 0.0)?)?;
    kappas
        .iter()
        .map(|&kappa| Ok(SweepPoint { kappa, bound: bound_probabilities(&basis, kappa)? }))
        .collect()
}

/// `κ` on the grid `0, step, 2·step, … ≤ max` where `|Q₁₂|²` peaks.
pub fn excitation_argmax(a: f64, max: f64, step: f64) -> Result<f64> {
    let kappas: Vec<f64> = (0..=((max / step).round() as usize)).map(|i| i as f64 * step).collect();
    let sweep = bound_probability_sweep(2, a, &kappas)?;
    let best = sweep
        .iter()
        .max_by(|x, y| x.bound[1].total_cmp(&y.bound[1]))
        .ok_or_else(|| Error::Argument("empty sweep".into()))?;
    Ok(best.kappa)
}
