//! Scenario-independent machinery: Galilean boosts of static eigenmodes,
//! decomposition of an initial state in the basis of the moving potential,
//! reconstruction of `Ψ(x, t)`, probability accounting, and a split-step
//! propagator used as an independent check.
//!
//! Continuum modes are normalized to `2π δ(k − k′)` within each channel, so
//! every momentum integral carries the measure `dk / 2π`.

mod split_step;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numerics::{integrate_adaptive, Domain, QuadValue, TailDecay, Tolerance};
use crate::{Error, Result};

pub use split_step::{split_step_propagate, SplitStepOptions};

/// Normalization of every stored continuum amplitude.
pub const CONTINUUM_NORMALIZATION: &str = "2π·δ(k−k′)";
pub const DEFAULT_RECONSTRUCTION_TOL: f64 = 1e-6;
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-8;
pub const DEFAULT_DT: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitsConvention {
    pub hbar: f64,
    pub mass: f64,
    /// `a` for Pöschl–Teller, `a₀` for hydrogen, `1/β` style scales elsewhere.
    pub length_scale: f64,
}

impl Default for UnitsConvention {
    fn default() -> Self {
        UnitsConvention { hbar: 1.0, mass: 1.0, length_scale: 1.0 }
    }
}

impl UnitsConvention {
    pub fn new(hbar: f64, mass: f64, length_scale: f64) -> Result<Self> {
        for (name, value) in [("hbar", hbar), ("mass", mass), ("length_scale", length_scale)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::Argument(format!("{name} must be positive and finite, got {value}")));
            }
        }
        Ok(UnitsConvention { hbar, mass, length_scale })
    }

    /// `m v / ℏ`, the wavenumber carried by the boost.
    pub fn boost_wavenumber(&self, v: f64) -> f64 {
        self.mass * v / self.hbar
    }

    /// `ℏ² k² / 2m`.
    pub fn kinetic_energy(&self, k: f64) -> f64 {
        self.hbar * self.hbar * k * k / (2.0 * self.mass)
    }
}

pub type QuantumNumbers = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundAmplitude {
    pub quantum_numbers: QuantumNumbers,
    pub amplitude: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundAmplitudeSet {
    pub entries: Vec<BoundAmplitude>,
    /// The scenario's dimensionless velocity (θ or κ).
    pub velocity_param: f64,
}

impl BoundAmplitudeSet {
    pub fn probability(&self) -> f64 {
        self.entries.iter().map(|e| e.amplitude.norm_sqr()).sum()
    }

    pub fn amplitude(&self, quantum_numbers: &[u32]) -> Option<Complex64> {
        self.entries.iter().find(|e| e.quantum_numbers == quantum_numbers).map(|e| e.amplitude)
    }
}

/// Amplitude density `P(k)` of one continuum channel on a momentum grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuumAmplitude {
    channel: String,
    k_grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl ContinuumAmplitude {
    pub fn new(channel: impl Into<String>, k_grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if k_grid.len() != values.len() || k_grid.len() < 2 {
            return Err(Error::Argument(format!(
                "continuum grid needs >= 2 points and matching values ({} vs {})",
                k_grid.len(),
                values.len()
            )));
        }
        if k_grid.windows(2).any(|w| !(w[1] > w[0])) || k_grid.iter().any(|k| !k.is_finite()) {
            return Err(Error::Argument("momentum grid must be finite and strictly increasing".into()));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Argument("non-finite continuum amplitude".into()));
        }
        Ok(ContinuumAmplitude { channel: channel.into(), k_grid, values })
    }

    pub fn channel(&self) -> &str {
        &self.channel
    }

    pub fn k_grid(&self) -> &[f64] {
        &self.k_grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn normalization(&self) -> &'static str {
        CONTINUUM_NORMALIZATION
    }

    /// `∫ |P(k)|² dk / 2π` by the trapezoid rule on the stored grid.
    pub fn probability(&self) -> f64 {
        let f: Vec<f64> = self.values.iter().map(|v| v.norm_sqr()).collect();
        trapezoid(&self.k_grid, &f) / (2.0 * std::f64::consts::PI)
    }

    fn max_spacing(&self) -> f64 {
        self.k_grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    // largest |k| carrying amplitude above `fraction` of the peak
    fn effective_k(&self, fraction: f64) -> f64 {
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        self.k_grid
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| v.norm() >= fraction * peak)
            .map(|(k, _)| k.abs())
            .fold(0.0, f64::max)
    }
}

fn trapezoid<V: QuadValue>(x: &[f64], f: &[V]) -> V {
    x.windows(2)
        .zip(f.windows(2))
        .fold(V::zero(), |acc, (xs, fs)| acc + (fs[0] + fs[1]) * (0.5 * (xs[1] - xs[0])))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbabilityBudget {
    pub bound: Vec<(QuantumNumbers, f64)>,
    pub continuum: f64,
    pub total: f64,
    /// `|total − 1|`
    pub defect: f64,
}

impl ProbabilityBudget {
    pub fn new(bound: Vec<(QuantumNumbers, f64)>, continuum: f64) -> Self {
        let total = bound.iter().map(|(_, p)| p).sum::<f64>() + continuum;
        ProbabilityBudget { bound, continuum, total, defect: (total - 1.0).abs() }
    }

    pub fn bound_total(&self) -> f64 {
        self.bound.iter().map(|(_, p)| p).sum()
    }
}

/// Uniform samples `x_i = start + i·spacing`, `i < count`. Treated as
/// periodic by the split-step propagator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpatialGrid {
    pub start: f64,
    pub spacing: f64,
    pub count: usize,
}

impl Default for SpatialGrid {
    fn default() -> Self {
        SpatialGrid::periodic(-40.0, 40.0, 4096).expect("valid default grid")
    }
}

impl SpatialGrid {
    /// `count` points covering `[start, end)`.
    pub fn periodic(start: f64, end: f64, count: usize) -> Result<Self> {
        if !(end > start) || count < 2 || !start.is_finite() || !end.is_finite() {
            return Err(Error::Argument(format!("bad spatial grid [{start}, {end}) with {count} points")));
        }
        Ok(SpatialGrid { start, spacing: (end - start) / count as f64, count })
    }

    pub fn x(&self, i: usize) -> f64 {
        self.start + i as f64 * self.spacing
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.x(i)).collect()
    }

    pub fn end(&self) -> f64 {
        self.x(self.count)
    }

    /// Index of the sample nearest to `x`, clamped to the grid.
    pub fn index_of(&self, x: f64) -> usize {
        (((x - self.start) / self.spacing).round().max(0.0) as usize).min(self.count - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WavefunctionFrame {
    pub grid: SpatialGrid,
    pub values: Vec<Complex64>,
    pub time: f64,
}

impl WavefunctionFrame {
    pub fn from_fn(grid: SpatialGrid, time: f64, f: impl Fn(f64) -> Complex64) -> Self {
        WavefunctionFrame { values: grid.positions().into_iter().map(f).collect(), grid, time }
    }

    /// `Σ |ψ|² Δx`
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.spacing
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            self.values.iter_mut().for_each(|v| *v /= n);
        }
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Discrete `‖ψ − φ‖₂` on a shared grid.
    pub fn l2_distance(&self, other: &WavefunctionFrame) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Argument("frames live on different grids".into()));
        }
        let s: f64 = self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm_sqr()).sum();
        Ok((s * self.grid.spacing).sqrt())
    }
}

/// Local density maxima inside `[lo, hi]` that exceed `min_fraction` of the
/// global maximum, as `(x, density)` pairs.
pub fn find_peaks(frame: &WavefunctionFrame, lo: f64, hi: f64, min_fraction: f64) -> Vec<(f64, f64)> {
    let rho = frame.density();
    let threshold = min_fraction * rho.iter().cloned().fold(0.0, f64::max);
    (1..rho.len() - 1)
        .filter(|&i| {
            let x = frame.grid.x(i);
            x >= lo && x <= hi && rho[i] > rho[i - 1] && rho[i] >= rho[i + 1] && rho[i] > threshold
        })
        .map(|i| (frame.grid.x(i), rho[i]))
        .collect()
}

/// Whether a channel's momenta run over `k > 0` or the whole line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentumRange {
    HalfLine,
    FullLine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChannelSpec {
    pub name: &'static str,
    pub range: MomentumRange,
}

/// Eigenmodes of a static one-dimensional potential.
pub trait Eigenbasis: Sync {
    fn units(&self) -> UnitsConvention;
    fn bound_count(&self) -> usize;
    fn bound_label(&self, n: usize) -> QuantumNumbers;
    fn bound_energy(&self, n: usize) -> f64;
    /// Real, normalized bound state `n` (0-based, lowest energy first).
    fn bound_mode(&self, n: usize, x: f64) -> f64;

    fn channels(&self) -> Vec<ChannelSpec> {
        Vec::new()
    }

    fn continuum_mode(&self, _channel: usize, _k: f64, _x: f64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    /// Points where the modes have a derivative discontinuity.
    fn kinks(&self) -> Vec<f64> {
        Vec::new()
    }

    /// `V(x)` for the grid propagator, if the potential has a grid form.
    fn potential(&self, _x: f64) -> Option<f64> {
        None
    }
}

/// `ψ(x, t) = exp(i m v x/ℏ − i m v² t/2ℏ) ϕ(x − vt) exp(−iEt/ℏ)`
pub fn boost_mode<F>(phi: F, energy: f64, v: f64, units: UnitsConvention) -> impl Fn(f64, f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    move |x, t| {
        let phase = (units.mass * v * (x - 0.5 * v * t) - energy * t) / units.hbar;
        Complex64::from_polar(1.0, phase) * phi(x - v * t)
    }
}

/// `∫ f dx` over the real line, split at `breakpoints`, for integrands
/// decaying at least exponentially.
///
/// With the map `x = −s ln(1 − t)` an integrand `~e^{−x/ℓ}` becomes
/// `~(1 − t)^{s/ℓ − 1}`, so oscillatory tails need `scale` well above the
/// decay length `ℓ`.
pub fn integrate_line<V, F>(f: F, breakpoints: &[f64], scale: f64, tol: &Tolerance) -> Result<V>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    let decay = TailDecay::Exponential;
    let mut cuts = breakpoints.to_vec();
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup();
    let Some((&first, &last)) = cuts.first().zip(cuts.last()) else {
        return Ok(integrate_adaptive(&f, Domain::Line { center: 0.0, scale, decay }, tol)?.value);
    };
    let mut total = integrate_adaptive(&f, Domain::LowerHalfLine { end: first, scale, decay }, tol)?.value;
    for w in cuts.windows(2) {
        total = total + integrate_adaptive(&f, Domain::Interval(w[0], w[1]), tol)?.value;
    }
    total = total + integrate_adaptive(&f, Domain::UpperHalfLine { start: last, scale, decay }, tol)?.value;
    Ok(total)
}

/// Uniform momentum grid: `[0, k_max]` for half-line channels and
/// `[−k_max, k_max]` for full-line ones.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KGrid {
    pub k_max: f64,
    pub points: usize,
}

impl Default for KGrid {
    fn default() -> Self {
        KGrid { k_max: 30.0, points: 2048 }
    }
}

impl KGrid {
    pub fn points_for(&self, range: MomentumRange) -> Vec<f64> {
        let lo = match range {
            MomentumRange::HalfLine => 0.0,
            MomentumRange::FullLine => -self.k_max,
        };
        let n = self.points.max(2);
        let dk = (self.k_max - lo) / (n - 1) as f64;
        (0..n).map(|i| lo + i as f64 * dk).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecompositionOptions {
    pub k_grid: KGrid,
    pub tolerance: Tolerance,
}

impl Default for DecompositionOptions {
    fn default() -> Self {
        DecompositionOptions { k_grid: KGrid::default(), tolerance: Tolerance::new(1e-13, 1e-11) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub bound: BoundAmplitudeSet,
    pub continuum: Vec<ContinuumAmplitude>,
}

/// The state at `t = 0`, either as a function or as grid samples.
#[derive(Clone, Copy)]
pub enum InitialState<'a> {
    Analytic(&'a (dyn Fn(f64) -> Complex64 + Sync)),
    Sampled(&'a WavefunctionFrame),
}

/// Decompose static eigenmode `initial` of `basis` in the basis moving
/// with velocity `v`.
pub fn decompose<B: Eigenbasis>(
    basis: &B,
    initial: usize,
    v: f64,
    velocity_param: f64,
    opts: &DecompositionOptions,
) -> Result<Decomposition> {
    if initial >= basis.bound_count() {
        return Err(Error::Argument(format!("no bound state {initial}")));
    }
    let phi = move |x: f64| Complex64::new(basis.bound_mode(initial, x), 0.0);
    decompose_general(basis, InitialState::Analytic(&phi), v, velocity_param, opts)
}

/// Overlaps `∫ e^{−imvx/ℏ} mode*(x) Φ(x) dx` with every bound mode and
/// every continuum mode on the momentum grid.
pub fn decompose_general<B: Eigenbasis>(
    basis: &B,
    initial: InitialState<'_>,
    v: f64,
    velocity_param: f64,
    opts: &DecompositionOptions,
) -> Result<Decomposition> {
    let units = basis.units();
    let q = units.boost_wavenumber(v);
    let kinks = basis.kinks();
    let overlap = |mode: &(dyn Fn(f64) -> Complex64 + Sync)| -> Result<Complex64> {
        let integrand = |x: f64| Complex64::from_polar(1.0, -q * x) * mode(x).conj();
        match initial {
            InitialState::Analytic(phi) => {
                integrate_line(|x| integrand(x) * phi(x), &kinks, 4.0 * units.length_scale, &opts.tolerance)
            }
            InitialState::Sampled(frame) => {
                let xs = frame.grid.positions();
                let f: Vec<Complex64> = xs.iter().zip(&frame.values).map(|(&x, &p)| integrand(x) * p).collect();
                Ok(trapezoid(&xs, &f))
            }
        }
    };

    let entries = (0..basis.bound_count())
        .map(|n| {
            let mode = move |x: f64| Complex64::new(basis.bound_mode(n, x), 0.0);
            Ok(BoundAmplitude { quantum_numbers: basis.bound_label(n), amplitude: overlap(&mode)? })
        })
        .collect::<Result<Vec<_>>>()?;

    let continuum = basis
        .channels()
        .iter()
        .enumerate()
        .map(|(c, spec)| {
            let ks = opts.k_grid.points_for(spec.range);
            let values = ks
                .par_iter()
                .map(|&k| overlap(&move |x: f64| basis.continuum_mode(c, k, x)))
                .collect::<Result<Vec<_>>>()?;
            ContinuumAmplitude::new(spec.name, ks, values)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Decomposition { bound: BoundAmplitudeSet { entries, velocity_param }, continuum })
}

/// `Ψ(x, t) = Σ aₙ ψₙ(x, t) + Σ_channels ∫ b(k) ψ_k(x, t) dk/2π`, the
/// momentum integral by the trapezoid rule on the stored grid.
///
/// The trapezoid sum is periodic in `x − vt` with period `2π/Δk`; a grid
/// too coarse for the requested frame is reported as a resolution error.
pub fn reconstruct<B: Eigenbasis>(
    basis: &B,
    decomposition: &Decomposition,
    v: f64,
    t: f64,
    grid: &SpatialGrid,
) -> Result<WavefunctionFrame> {
    let units = basis.units();
    let channels = basis.channels();
    if decomposition.continuum.len() != channels.len() {
        return Err(Error::Argument("decomposition does not match the basis channels".into()));
    }
    if decomposition.bound.entries.len() != basis.bound_count() {
        return Err(Error::Argument("decomposition does not match the bound states".into()));
    }
    let reach = grid.start.abs().max(grid.end().abs()) + (v * t).abs();
    for cont in &decomposition.continuum {
        let period = 2.0 * std::f64::consts::PI / cont.max_spacing();
        let spread = cont.effective_k(1e-4) * units.hbar * t.abs() / units.mass;
        if period < 2.0 * reach + spread {
            return Err(Error::Resolution(format!(
                "channel {}: alias period {period:.1} < required {:.1}; refine Δk",
                cont.channel(),
                2.0 * reach + spread
            )));
        }
    }

    // fold trapezoid weights, the dk/2π measure and e^{−iE_k t/ℏ} into the amplitudes
    let weighted: Vec<Vec<(f64, Complex64)>> = decomposition
        .continuum
        .iter()
        .map(|cont| {
            let ks = cont.k_grid();
            (0..ks.len())
                .map(|i| {
                    let left = if i > 0 { ks[i] - ks[i - 1] } else { 0.0 };
                    let right = if i + 1 < ks.len() { ks[i + 1] - ks[i] } else { 0.0 };
                    let w = 0.5 * (left + right) / (2.0 * std::f64::consts::PI);
                    let evolve = Complex64::from_polar(1.0, -units.kinetic_energy(ks[i]) * t / units.hbar);
                    (ks[i], cont.values()[i] * evolve * w)
                })
                .collect()
        })
        .collect();
    let bound: Vec<Complex64> = decomposition
        .bound
        .entries
        .iter()
        .enumerate()
        .map(|(n, e)| e.amplitude * Complex64::from_polar(1.0, -basis.bound_energy(n) * t / units.hbar))
        .collect();

    let values = grid
        .positions()
        .par_iter()
        .map(|&x| {
            let xi = x - v * t;
            let mut sum: Complex64 = bound.iter().enumerate().map(|(n, a)| a * basis.bound_mode(n, xi)).sum();
            for (c, ws) in weighted.iter().enumerate() {
                for &(k, w) in ws {
                    sum += w * basis.continuum_mode(c, k, xi);
                }
            }
            let boost = (units.mass * v * (x - 0.5 * v * t)) / units.hbar;
            sum * Complex64::from_polar(1.0, boost)
        })
        .collect();
    Ok(WavefunctionFrame { grid: *grid, values, time: t })
}

/// Reconstruct at `t = 0` and compare with the initial state; a defect
/// above `tol` means the momentum grid is under-resolved.
pub fn check_round_trip<B: Eigenbasis>(
    basis: &B,
    decomposition: &Decomposition,
    initial: &(dyn Fn(f64) -> Complex64 + Sync),
    v: f64,
    grid: &SpatialGrid,
    tol: f64,
) -> Result<f64> {
    let rebuilt = reconstruct(basis, decomposition, v, 0.0, grid)?;
    let exact = WavefunctionFrame::from_fn(*grid, 0.0, initial);
    let defect = rebuilt.l2_distance(&exact)?;
    if defect > tol {
        return Err(Error::Resolution(format!("t = 0 round-trip defect {defect:.3e} exceeds {tol:.1e}")));
    }
    Ok(defect)
}

/// Bound probabilities `|aₙ|²` plus `Σ_channels ∫ |b|² dk/2π`.
pub fn probability_budget(decomposition: &Decomposition) -> ProbabilityBudget {
    let bound = decomposition
        .bound
        .entries
        .iter()
        .map(|e| (e.quantum_numbers.clone(), e.amplitude.norm_sqr()))
        .collect();
    let continuum = decomposition.continuum.iter().map(ContinuumAmplitude::probability).sum();
    ProbabilityBudget::new(bound, continuum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_reject_nonpositive() {
        assert!(UnitsConvention::new(1.0, 0.0, 1.0).is_err());
        assert!(UnitsConvention::new(f64::INFINITY, 1.0, 1.0).is_err());
        let u = UnitsConvention::new(2.0, 3.0, 1.0).unwrap();
        assert!((u.boost_wavenumber(4.0) - 6.0).abs() < 1e-15);
        assert!((u.kinetic_energy(1.5) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn boost_mode_limits() {
        let units = UnitsConvention::default();
        let phi = |x: f64| Complex64::new((-x * x).exp(), 0.0);
        let still = boost_mode(phi, -0.5, 0.0, units);
        for (x, t) in [(0.3, 0.0), (-1.0, 2.5), (0.0, 7.0)] {
            let expected = phi(x) * Complex64::from_polar(1.0, 0.5 * t);
            assert!((still(x, t) - expected).norm() < 1e-15);
        }
        let moving = boost_mode(phi, -0.5, 1.7, units);
        assert!((moving(0.0, 0.0) - phi(0.0)).norm() < 1e-15);
        assert!((moving(0.4, 0.0) - phi(0.4) * Complex64::from_polar(1.0, 1.7 * 0.4)).norm() < 1e-15);
        assert!((moving(3.4, 2.0).norm() - phi(0.0).norm()).abs() < 1e-15);
    }

    #[test]
    fn continuum_amplitude_validation() {
        let c = Complex64::new(1.0, 0.0);
        assert!(ContinuumAmplitude::new("x", vec![0.0, 1.0], vec![c]).is_err());
        assert!(ContinuumAmplitude::new("x", vec![0.0, 0.0], vec![c, c]).is_err());
        assert!(ContinuumAmplitude::new("x", vec![0.0, 1.0], vec![c, Complex64::new(f64::NAN, 0.0)]).is_err());
        let amp = ContinuumAmplitude::new("x", vec![0.0, 1.0, 2.0], vec![c, c, c]).unwrap();
        assert_eq!(amp.normalization(), CONTINUUM_NORMALIZATION);
        assert!((amp.probability() - 1.0 / std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn budget_totals() {
        let b = ProbabilityBudget::new(vec![(vec![1], 0.25), (vec![2], 0.5)], 0.25);
        assert!((b.total - 1.0).abs() < 1e-15 && b.defect < 1e-15);
        assert!((b.bound_total() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn grid_and_frame_basics() {
        let grid = SpatialGrid::periodic(-1.0, 1.0, 200).unwrap();
        assert!((grid.end() - 1.0).abs() < 1e-12);
        assert_eq!(grid.index_of(-5.0), 0);
        assert_eq!(grid.index_of(5.0), 199);
        assert_eq!(grid.index_of(0.0), 100);
        assert!(SpatialGrid::periodic(1.0, 1.0, 10).is_err());
        let mut frame = WavefunctionFrame::from_fn(grid, 0.0, |_| Complex64::new(3.0, 4.0));
        frame.normalize();
        assert!((frame.norm_sqr() - 1.0).abs() < 1e-13);
        let other = WavefunctionFrame::from_fn(SpatialGrid::default(), 0.0, |_| Complex64::new(1.0, 0.0));
        assert!(frame.l2_distance(&other).is_err());
    }

    #[test]
    fn peaks_respect_window_and_threshold() {
        let grid = SpatialGrid::periodic(-20.0, 20.0, 4000).unwrap();
        let frame = WavefunctionFrame::from_fn(grid, 0.0, |x| {
            Complex64::new((-(x - 5.0) * (x - 5.0)).exp() + 1e-3 * (-(x + 5.0) * (x + 5.0)).exp(), 0.0)
        });
        let all = find_peaks(&frame, -20.0, 20.0, 1e-8);
        assert_eq!(all.len(), 2);
        assert!((all[1].0 - 5.0).abs() < 0.011);
        assert!(find_peaks(&frame, -20.0, 20.0, 1e-2).len() == 1);
        assert!(find_peaks(&frame, -20.0, 0.0, 1e-2).is_empty());
    }

    #[test]
    fn momentum_grids() {
        let g = KGrid { k_max: 2.0, points: 5 };
        assert_eq!(g.points_for(MomentumRange::HalfLine), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(g.points_for(MomentumRange::FullLine), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
    }
}
