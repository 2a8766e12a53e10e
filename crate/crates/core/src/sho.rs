//! Harmonic oscillator `V(x) = mω²x²/2` suddenly moving with velocity `v`;
//! `κ = mv²/2ℏω`.
//!
//! From the ground state the amplitudes follow `Q₀ₙ = −i sqrt(κ/n) Q₀,ₙ₋₁`
//! with `Q₀₀ = e^{−κ/2}`, so `|Q₀ₙ|²` is Poisson in `n` with mean `κ`.

use num_complex::Complex64;
use serde::Serialize;

use crate::evolution::{
    decompose, DecompositionOptions, Eigenbasis, ProbabilityBudget, QuantumNumbers, UnitsConvention,
};
use crate::numerics::hermite;
use crate::{Error, Result};

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SHOParams {
    pub omega: f64,
    pub kappa: f64,
    pub n_max: usize,
    pub units: UnitsConvention,
}

impl SHOParams {
    /// `ℏ = m = 1`; the length unit is `sqrt(ℏ/mω)`.
    pub fn new(omega: f64, kappa: f64, n_max: usize) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) || !(kappa >= 0.0 && kappa.is_finite()) || n_max < 1 {
            return Err(Error::Argument(format!(
                "need omega > 0, kappa >= 0, n_max >= 1; got omega = {omega}, kappa = {kappa}, n_max = {n_max}"
            )));
        }
        let units = UnitsConvention { length_scale: omega.recip().sqrt(), ..Default::default() };
        Ok(SHOParams { omega, kappa, n_max, units })
    }

    /// `sqrt(2ℏωκ/m)`
    pub fn velocity(&self) -> f64 {
        (2.0 * self.units.hbar * self.omega * self.kappa / self.units.mass).sqrt()
    }

    /// `ℏω(n + 1/2)`
    pub fn energy(&self, n: usize) -> f64 {
        self.units.hbar * self.omega * (n as f64 + 0.5)
    }
}

/// `n_max = κ + 20√κ + 30`, enough for a Poisson tail far below `1e−12`.
pub fn default_n_max(kappa: f64) -> usize {
    (kappa + 20.0 * kappa.sqrt() + 30.0).ceil() as usize
}

/// `Q₀ₙ(κ)` for `n = 0..=n_max` by the ladder recursion.
pub fn sho_amplitudes(kappa: f64, n_max: usize) -> Vec<Complex64> {
    let mut q = Complex64::new((-kappa / 2.0).exp(), 0.0);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(q);
    for n in 1..=n_max {
        q *= Complex64::new(0.0, -(kappa / n as f64).sqrt());
        out.push(q);
    }
    out
}

pub fn sho_amplitude(n: usize, kappa: f64) -> Complex64 {
    sho_amplitudes(kappa, n)[n]
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `Σ_{n > n_max} e^{−κ} κⁿ/n!`, summed directly so small tails keep their
/// relative accuracy.
pub fn poisson_tail(kappa: f64, n_max: usize) -> f64 {
    if kappa == 0.0 {
        return 0.0;
    }
    let mut n = n_max + 1;
    let mut term = (-kappa + n as f64 * kappa.ln() - ln_factorial(n)).exp();
    let mut sum = 0.0;
    // terms fall once n > κ; before that keep going regardless
    while term > 0.0 && (n as f64 <= kappa || term > sum * 1e-17) {
        sum += term;
        n += 1;
        term *= kappa / n as f64;
    }
    sum
}

/// `|Q₀ₙ|²` for `n ≤ n_max`; fails if the discarded tail exceeds `tail_tol`.
pub fn sho_probability_spectrum(kappa: f64, n_max: usize, tail_tol: f64) -> Result<ProbabilityBudget> {
    let tail = poisson_tail(kappa, n_max);
    if tail > tail_tol {
        let mut suggested = n_max + 1;
        while poisson_tail(kappa, suggested) > tail_tol {
            suggested += 1 + suggested / 8;
        }
        return Err(Error::Truncation { n_max, tail, suggested });
    }
    let bound = sho_amplitudes(kappa, n_max)
        .into_iter()
        .enumerate()
        .map(|(n, q)| (vec![n as u32], q.norm_sqr()))
        .collect();
    Ok(ProbabilityBudget::new(bound, 0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResonanceCheck {
    pub n: usize,
    /// `κ` maximizing `|Q₀ₙ(κ)|²`.
    pub argmax_kappa: f64,
    /// `||Q₀ₙ(n)|² − |Q₀,ₙ₋₁(n)|²|`
    pub equality_defect: f64,
}

/// Locate the peak of `|Q₀ₙ(κ)|²` by golden-section search on its
/// logarithm and measure the equality `|Q₀ₙ(n)|² = |Q₀,ₙ₋₁(n)|²`.
pub fn sho_resonance_check(n: usize) -> Result<ResonanceCheck> {
    if n < 1 {
        return Err(Error::Argument("resonance needs n >= 1".into()));
    }
    let ln_p = |k: f64| sho_amplitude(n, k).norm_sqr().ln();
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, 4.0 * n as f64 + 10.0);
    let (mut c, mut d) = (hi - ratio * (hi - lo), lo + ratio * (hi - lo));
    let (mut fc, mut fd) = (ln_p(c), ln_p(d));
    while hi - lo > 1e-12 * hi {
        if fc > fd {
            hi = d;
            (d, fd) = (c, fc);
            c = hi - ratio * (hi - lo);
            fc = ln_p(c);
        } else {
            lo = c;
            (c, fc) = (d, fd);
            d = lo + ratio * (hi - lo);
            fd = ln_p(d);
        }
    }
    let q = sho_amplitudes(n as f64, n);
    Ok(ResonanceCheck {
        n,
        argmax_kappa: 0.5 * (lo + hi),
        equality_defect: (q[n].norm_sqr() - q[n - 1].norm_sqr()).abs(),
    })
}

/// Oscillator eigenmodes `n = 0..=n_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SHOBasis {
    params: SHOParams,
}

pub fn sho_eigenmodes(params: SHOParams) -> SHOBasis {
    SHOBasis { params }
}

impl SHOBasis {
    /// `(2ⁿn!)^{−1/2} (mω/πℏ)^{1/4} e^{−ξ²/2} Hₙ(ξ)`, `ξ = x sqrt(mω/ℏ)`.
    pub fn psi(&self, n: usize, x: f64) -> f64 {
        let l = self.params.units.length_scale;
        let xi = x / l;
        let ln_norm = -0.5 * (n as f64 * std::f64::consts::LN_2 + ln_factorial(n)) - 0.25 * std::f64::consts::PI.ln();
        (ln_norm - 0.5 * xi * xi).exp() * hermite(n as u32, xi) / l.sqrt()
    }
}

impl Eigenbasis for SHOBasis {
    fn units(&self) -> UnitsConvention {
        self.params.units
    }
    fn bound_count(&self) -> usize {
        self.params.n_max + 1
    }
    fn bound_label(&self, n: usize) -> QuantumNumbers {
        vec![n as u32]
    }
    fn bound_energy(&self, n: usize) -> f64 {
        self.params.energy(n)
    }
    fn bound_mode(&self, n: usize, x: f64) -> f64 {
        self.psi(n, x)
    }
    fn potential(&self, x: f64) -> Option<f64> {
        Some(0.5 * self.params.units.mass * self.params.omega.powi(2) * x * x)
    }
}

/// `Q₀ₙ` for `n ≤ n_max` by direct overlap quadrature of the Hermite functions.
pub fn sho_quadrature_amplitudes(params: SHOParams) -> Result<Vec<Complex64>> {
    let basis = sho_eigenmodes(params);
    let d = decompose(&basis, 0, params.velocity(), params.kappa, &DecompositionOptions::default())?;
    Ok(d.bound.entries.into_iter().map(|e| e.amplitude).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_amplitude_and_ladder_phases() {
        for kappa in [0.0, 0.3, 2.0, 9.0] {
            let q = sho_amplitudes(kappa, 8);
            assert_eq!(q[0], Complex64::new((-kappa / 2.0).exp(), 0.0));
            if kappa > 0.0 {
                for (n, a) in q.iter().enumerate() {
                    let expected = -(n as f64) * std::f64::consts::FRAC_PI_2;
                    let diff = (a.arg() - expected).rem_euclid(2.0 * std::f64::consts::PI);
                    assert!(diff < 1e-14 || 2.0 * std::f64::consts::PI - diff < 1e-14, "n {n}");
                }
            }
        }
    }

    #[test]
    fn spectrum_at_rest_and_at_kappa_one() {
        let rest = sho_probability_spectrum(0.0, 5, DEFAULT_TAIL_TOL).unwrap();
        assert_eq!(rest.bound[0].1, 1.0);
        assert!(rest.bound[1..].iter().all(|(_, p)| *p == 0.0));
        let one = sho_probability_spectrum(1.0, 30, DEFAULT_TAIL_TOL).unwrap();
        let e = (-1.0f64).exp();
        assert!((one.bound[0].1 - e).abs() < 1e-16 && (one.bound[1].1 - e).abs() < 1e-16);
        assert_eq!(one.continuum, 0.0);
    }

    #[test]
    fn truncation_suggests_a_sufficient_cutoff() {
        match sho_probability_spectrum(10.0, 12, DEFAULT_TAIL_TOL) {
            Err(Error::Truncation { suggested, tail, .. }) => {
                assert!(tail > 0.1);
                assert!(poisson_tail(10.0, suggested) <= DEFAULT_TAIL_TOL);
                assert!(sho_probability_spectrum(10.0, suggested, DEFAULT_TAIL_TOL).is_ok());
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn poisson_tail_matches_complement() {
        for (kappa, n_max) in [(0.5, 3), (3.0, 5), (7.0, 10)] {
            let head: f64 = sho_amplitudes(kappa, n_max).iter().map(|q| q.norm_sqr()).sum();
            assert!((poisson_tail(kappa, n_max) - (1.0 - head)).abs() < 1e-14);
        }
        assert_eq!(poisson_tail(0.0, 3), 0.0);
    }

    #[test]
    fn params_validate() {
        assert!(SHOParams::new(0.0, 1.0, 5).is_err());
        assert!(SHOParams::new(1.0, -1.0, 5).is_err());
        assert!(SHOParams::new(1.0, 1.0, 0).is_err());
        let p = SHOParams::new(4.0, 2.0, 5).unwrap();
        assert!((p.velocity() - 4.0).abs() < 1e-15);
        assert!((p.energy(1) - 6.0).abs() < 1e-15);
        assert!((p.units.length_scale - 0.5).abs() < 1e-15);
    }

    #[test]
    fn resonance_rejects_zero() {
        assert!(sho_resonance_check(0).is_err());
    }
}
