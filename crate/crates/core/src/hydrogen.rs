//! Hydrogen atom, initially in its ground state, whose proton suddenly moves
//! with velocity `v`; `κ = μ v a₀/ℏ`. Atomic units throughout (`a₀ = 1`).
//!
//! Only `m = 0` states are reached. Bound amplitudes reduce to the radial
//! integral `Q_{n,l} = √(2l+1) iˡ ∫ j_l(κr) R₁₀ R_{nl} r² dr`.
//!
//! The small-`κ` coefficients of the survival probability are exact
//! rationals: expanding `j_l` in powers of `κr` leaves radial moments
//! `∫ R₁₀ R_{nl} rᵖ dr`, each a finite sum of factorials, and the
//! irrational normalizations of `R_{nl}` only enter squared.

use std::f64::consts::PI;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::numerics::{
    hyp1f1_complex, integrate_adaptive, laguerre_assoc, ln_gamma_complex, rational_to_decimal,
    richardson_extrapolate, richardson_extrapolate_exact, spherical_bessel, Domain, ExactAccelerationTable, TailDecay,
    Tolerance,
};
use crate::{Error, Result};

/// Sequence `c₂(N)`, `N = 1..=20`, used for the ionization coefficient.
pub const IONIZATION_SEQUENCE_LEN: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HydrogenParams {
    pub kappa: f64,
    /// Highest principal quantum number kept; `l = 0..n−1`, `m = 0`.
    pub n_max: u32,
}

impl HydrogenParams {
    pub fn new(kappa: f64, n_max: u32) -> Result<Self> {
        if !(kappa >= 0.0 && kappa.is_finite()) || n_max < 1 {
            return Err(Error::Argument(format!("need kappa >= 0 and n_max >= 1, got {kappa}, {n_max}")));
        }
        Ok(HydrogenParams { kappa, n_max })
    }
}

fn check_levels(n: u32, l: u32) -> Result<()> {
    if n < 1 || l >= n {
        return Err(Error::Argument(format!("need n >= 1 and l < n, got n = {n}, l = {l}")));
    }
    Ok(())
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `R_{nl}(r) = 2^{l+1} e^{−r/n} sqrt((n−l−1)!/(n⁴(n+l)!)) (r/n)ˡ L_{n−l−1}^{2l+1}(2r/n)`
pub fn hydrogen_radial(n: u32, l: u32, r: f64) -> Result<f64> {
    check_levels(n, l)?;
    if !(r >= 0.0) {
        return Err(Error::Argument(format!("need r >= 0, got {r}")));
    }
    let nf = n as f64;
    let ln_norm = (l + 1) as f64 * 2f64.ln() + 0.5 * (ln_factorial(n - l - 1) - 4.0 * nf.ln() - ln_factorial(n + l));
    let envelope = (ln_norm - r / nf).exp();
    if envelope == 0.0 {
        return Ok(0.0);
    }
    let power = if l == 0 { 1.0 } else { (r / nf).powi(l as i32) };
    Ok(envelope * power * laguerre_assoc(n - l - 1, (2 * l + 1) as f64, 2.0 * r / nf))
}

/// `iˡ`
fn i_pow(l: u32) -> Complex64 {
    [Complex64::new(1.0, 0.0), Complex64::i(), Complex64::new(-1.0, 0.0), -Complex64::i()][(l % 4) as usize]
}

/// `Q_{1,0;n,l}(κ)` by adaptive quadrature of the radial integral.
pub fn hydrogen_bound_amplitude(n: u32, l: u32, kappa: f64) -> Result<Complex64> {
    check_levels(n, l)?;
    if !(kappa >= 0.0) {
        return Err(Error::Argument(format!("need kappa >= 0, got {kappa}")));
    }
    let f = |r: f64| {
        let j = spherical_bessel(l, kappa * r).unwrap_or(f64::NAN);
        j * hydrogen_radial(1, 0, r).unwrap_or(f64::NAN) * hydrogen_radial(n, l, r).unwrap_or(f64::NAN) * r * r
    };
    let domain = Domain::UpperHalfLine { start: 0.0, scale: n as f64, decay: TailDecay::Exponential };
    let res = integrate_adaptive(f, domain, &Tolerance::new(1e-15, 1e-13))?;
    Ok(i_pow(l) * ((2 * l + 1) as f64).sqrt() * res.value)
}

/// `Σ_l |Q_{1,0;n,l}(κ)|²` for each `n = 1..=n_max`.
pub fn level_probabilities(n_max: u32, kappa: f64) -> Result<Vec<f64>> {
    (1..=n_max)
        .into_par_iter()
        .map(|n| (0..n).map(|l| Ok(hydrogen_bound_amplitude(n, l, kappa)?.norm_sqr())).sum())
        .collect()
}

/// `P_{n≤N}(κ) = Σ_{n≤N} Σ_l |Q_{1,0;n,l}(κ)|²`
pub fn hydrogen_survival(n_max: u32, kappa: f64) -> Result<f64> {
    HydrogenParams::new(kappa, n_max)?;
    Ok(level_probabilities(n_max, kappa)?.iter().sum())
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn rational_pow(base: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * base)
}

/// Exact radial data for one `(n, l)` level.
struct RadialMoments {
    l: u32,
    /// `(2 · normalization of R_{nl})²`
    norm_sq: BigRational,
    /// Polynomial coefficients of `R_{nl}` without the normalization, in powers `r^{l+j}`.
    coeffs: Vec<BigRational>,
    /// `n/(n+1)`
    ratio: BigRational,
}

impl RadialMoments {
    fn new(n: u32, l: u32) -> Self {
        let m = n - l - 1;
        let two_over_n = rat(2, n as i64);
        let coeffs = (0..=m)
            .map(|j| {
                let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let num = sign * binomial(n + l, m - j);
                BigRational::new(num, factorial(j) * BigInt::from(n).pow(l)) * rational_pow(&two_over_n, j)
            })
            .collect();
        let four = BigInt::from(4);
        let norm_sq = BigRational::new(
            four.pow(l + 1) * factorial(n - l - 1) * 4,
            BigInt::from(n).pow(4) * factorial(n + l),
        );
        RadialMoments { l, norm_sq, coeffs, ratio: rat(n as i64, n as i64 + 1) }
    }

    /// `∫ R₁₀ R_{nl} rᵖ dr` divided by the square root of `norm_sq`.
    fn moment(&self, p: u32) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let q = p + self.l + j as u32;
                b * BigRational::from_integer(factorial(q)) * rational_pow(&self.ratio, q + 1)
            })
            .fold(BigRational::zero(), |acc, t| acc + t)
    }
}

/// Coefficient of `x^{l+2s}` in `j_l(x)`: `(−1)ˢ / (2ˢ s! (2l+2s+1)!!)`.
fn bessel_coefficient(l: u32, s: u32) -> BigRational {
    let double_fact = (0..=(l + s)).fold(BigInt::one(), |acc, k| acc * (2 * k + 1));
    let den = BigInt::from(2).pow(s) * factorial(s) * double_fact;
    let num = if s % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    BigRational::new(num, den)
}

/// Exact coefficient of `κ^{2·order}` in `|Q_{1,0;n,l}(κ)|²`.
pub fn amplitude_series_coefficient(n: u32, l: u32, order: u32) -> Result<BigRational> {
    check_levels(n, l)?;
    if order < l {
        return Ok(BigRational::zero());
    }
    let rm = RadialMoments::new(n, l);
    let top = order - l;
    let terms: Vec<BigRational> =
        (0..=top).map(|s| bessel_coefficient(l, s) * rm.moment(l + 2 * s + 2)).collect();
    let cross = (0..=top).fold(BigRational::zero(), |acc, s| acc + &terms[s as usize] * &terms[(top - s) as usize]);
    Ok(cross * rm.norm_sq * BigInt::from(2 * l + 1))
}

/// Exact coefficient of `κ^{2·order}` in `P_{n≤N}(κ)`.
pub fn survival_series_coefficient(n_max: u32, order: u32) -> Result<BigRational> {
    if n_max < 1 {
        return Err(Error::Argument("need N >= 1".into()));
    }
    let parts = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            (0..n.min(order + 1))
                .map(|l| amplitude_series_coefficient(n, l, order))
                .try_fold(BigRational::zero(), |acc, c| Ok::<_, Error>(acc + c?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(BigRational::zero(), |acc, c| acc + c))
}

/// `c₂(N)` in `P_{n≤N} ≈ 1 + c₂ κ² + c₄ κ⁴`.
pub fn hydrogen_kappa2_coefficient(n_max: u32) -> Result<f64> {
    Ok(survival_series_coefficient(n_max, 1)?.to_f64().unwrap_or(f64::NAN))
}

/// `c₄(N)` in `P_{n≤N} ≈ 1 + c₂ κ² + c₄ κ⁴`.
pub fn hydrogen_kappa4_coefficient(n_max: u32) -> Result<f64> {
    Ok(survival_series_coefficient(n_max, 2)?.to_f64().unwrap_or(f64::NAN))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IonizationCoefficient {
    /// `lim_{N→∞} −c₂(N)`: ionization probability over `κ²` as `κ → 0`.
    pub extrapolated: f64,
    /// Limit of `c₂(N)` to 20 decimals.
    pub limit_decimal: String,
    /// Fitted coefficients of `N⁻², N⁻³, …` in `c₂(N)`.
    pub tail: Vec<f64>,
    pub sequence: Vec<f64>,
    #[serde(skip)]
    pub table: ExactAccelerationTable,
}

/// Richardson extrapolation of the exact `c₂(N)`, `N = 1..=20`, eliminating
/// `N⁻²` through `N⁻²⁰`.
pub fn hydrogen_ionization_coefficient() -> Result<IonizationCoefficient> {
    let seq = (1..=IONIZATION_SEQUENCE_LEN)
        .into_par_iter()
        .map(|n| survival_series_coefficient(n, 1))
        .collect::<Result<Vec<_>>>()?;
    let powers: Vec<u32> = (2..=IONIZATION_SEQUENCE_LEN).collect();
    let table = richardson_extrapolate_exact(1, &seq, &powers)?;
    let f = table.to_f64();
    Ok(IonizationCoefficient {
        extrapolated: -f.extrapolated,
        limit_decimal: rational_to_decimal(&table.extrapolated, 20),
        tail: f.fitted_tail,
        sequence: f.raw_sequence,
        table,
    })
}

// adaptive quadrature of a fallible integrand; the first error wins
fn integrate_fallible<F>(f: F, domain: Domain, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure = Mutex::new(None);
    let res = integrate_adaptive(
        |x| {
            f(x).unwrap_or_else(|e| {
                failure.lock().expect("error slot").get_or_insert(e);
                f64::NAN
            })
        },
        domain,
        tol,
    );
    match failure.into_inner().expect("error slot") {
        Some(e) => Err(e),
        None => Ok(res?.value),
    }
}

/// `256π u ((u+i)/(−u+i))^{−i/u} (−1 + 2i/(u+i))^{i/u} (coth(π/u) + 1) / (3(u²+1)⁵)`
/// on the principal branch; the product must come out real and positive.
pub fn ionization_integrand(u: f64) -> Result<f64> {
    if !(u >= 0.0) {
        return Err(Error::Argument(format!("need u >= 0, got {u}")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    let i = Complex64::i();
    let w1 = (u + i) / (-u + i);
    let w2 = -1.0 + 2.0 * i / (u + i);
    let powers = w1.powc(-i / u) * w2.powc(i / u);
    let value = 256.0 * PI * u * powers * ((PI / u).tanh().recip() + 1.0) / (3.0 * (u * u + 1.0).powi(5));
    if value.im.abs() > 1e-10 * value.norm() || !(value.re > 0.0) && value.norm() > 0.0 {
        return Err(Error::Branch { at: u, real: value.re, imag: value.im });
    }
    Ok(value.re)
}

/// `∫₀^∞ ionization_integrand(u) du/2π`, the `κ²` coefficient of the
/// ionization probability from the continuum side.
pub fn hydrogen_continuum_coefficient() -> Result<f64> {
    let domain = Domain::UpperHalfLine { start: 0.0, scale: 1.0, decay: TailDecay::Algebraic };
    Ok(integrate_fallible(ionization_integrand, domain, &Tolerance::new(1e-14, 1e-14))? / (2.0 * PI))
}

/// Coulomb continuum radial function `R_l(k, r)`, normalized to `2πδ(k − k′)`:
/// `2^{l+1}(kr)^{l+1}/(r(2l+1)!) e^{π/2k − ikr} |Γ(l+1−i/k)| ₁F₁(l+1+i/k; 2l+2; 2ikr)`.
pub fn hydrogen_continuum_wavefunction(k: f64, l: u32, r: f64) -> Result<Complex64> {
    if !(k > 0.0 && k.is_finite()) || !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Argument(format!("need k > 0 and finite r >= 0, got k = {k}, r = {r}")));
    }
    let lf = l as f64;
    let ln_gamma = ln_gamma_complex(Complex64::new(lf + 1.0, -1.0 / k))?.re;
    let ln_pref = (lf + 1.0) * (2.0 * k).ln() - ln_factorial(2 * l + 1) + PI / (2.0 * k) + ln_gamma;
    if r == 0.0 {
        return Ok(Complex64::new(if l == 0 { ln_pref.exp() } else { 0.0 }, 0.0));
    }
    let m = hyp1f1_complex(Complex64::new(lf + 1.0, 1.0 / k), Complex64::new(2.0 * lf + 2.0, 0.0), Complex64::new(0.0, 2.0 * k * r))?;
    Ok((ln_pref + lf * r.ln()).exp() * Complex64::from_polar(1.0, -k * r) * m)
}

/// Continuum amplitude `√(2l+1) iˡ ∫ j_l(κr) R_l(k, r) R₁₀(r) r² dr`.
pub fn hydrogen_continuum_amplitude(l: u32, k: f64, kappa: f64) -> Result<Complex64> {
    let f = |r: f64| {
        let bound = 2.0 * (-r).exp() * r * r;
        if bound == 0.0 {
            return Ok(0.0);
        }
        Ok(spherical_bessel(l, kappa * r)? * hydrogen_continuum_wavefunction(k, l, r)?.re * bound)
    };
    let domain = Domain::UpperHalfLine { start: 0.0, scale: 4.0, decay: TailDecay::Exponential };
    let value = integrate_fallible(f, domain, &Tolerance::new(1e-13, 1e-11))?;
    Ok(i_pow(l) * ((2 * l + 1) as f64).sqrt() * value)
}

/// `∫₀^∞ Σ_{l≤l_max} |P_l(k)|² dk/2π`
pub fn hydrogen_ionization_probability(kappa: f64, l_max: u32, tol: &Tolerance) -> Result<f64> {
    let f = |k: f64| {
        if k == 0.0 {
            return Ok(0.0);
        }
        (0..=l_max).into_par_iter().map(|l| Ok(hydrogen_continuum_amplitude(l, k, kappa)?.norm_sqr())).sum()
    };
    let domain = Domain::UpperHalfLine { start: 0.0, scale: 1.0, decay: TailDecay::Algebraic };
    Ok(integrate_fallible(f, domain, tol)? / (2.0 * PI))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParsevalCheck {
    pub kappa: f64,
    /// `P_{n≤N}(κ)`
    pub bound: f64,
    /// `Σ_{n>N}` estimated from a `N⁻², N⁻³, N⁻⁴` fit of `P_{n≤N'}` for `N < N' ≤ N_fit`.
    pub bound_tail: f64,
    pub continuum: f64,
    pub total: f64,
}

/// Bound plus continuum probability at finite `κ`.
pub fn hydrogen_parseval(kappa: f64, n_max: u32, n_fit: u32, l_max: u32) -> Result<ParsevalCheck> {
    if n_fit < n_max + 4 {
        return Err(Error::Argument(format!("need n_fit >= n_max + 4, got {n_fit} and {n_max}")));
    }
    let levels = level_probabilities(n_fit, kappa)?;
    let cumulative: Vec<f64> = levels.iter().scan(0.0, |acc, p| { *acc += p; Some(*acc) }).collect();
    let bound = cumulative[n_max as usize - 1];
    let fit = richardson_extrapolate(n_max, &cumulative[n_max as usize - 1..], &[2.0, 3.0, 4.0])?;
    let continuum = hydrogen_ionization_probability(kappa, l_max, &Tolerance::new(1e-9, 1e-8))?;
    let bound_tail = fit.extrapolated - bound;
    Ok(ParsevalCheck { kappa, bound, bound_tail, continuum, total: bound + bound_tail + continuum })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_reference_values() {
        assert!((hydrogen_radial(1, 0, 0.0).unwrap() - 2.0).abs() < 1e-15);
        // R₂₁(r) = r e^{−r/2} / (2√6)
        let r = 1.3;
        let expected = r * (-r / 2.0f64).exp() / (2.0 * 6f64.sqrt());
        assert!((hydrogen_radial(2, 1, r).unwrap() - expected).abs() < 1e-15);
        assert!(hydrogen_radial(2, 2, 1.0).is_err());
        assert!(hydrogen_radial(0, 0, 1.0).is_err());
        assert!(hydrogen_radial(1, 0, -1.0).is_err());
    }

    #[test]
    fn bessel_series_coefficients() {
        assert_eq!(bessel_coefficient(0, 1), rat(-1, 6));
        assert_eq!(bessel_coefficient(1, 0), rat(1, 3));
        assert_eq!(bessel_coefficient(1, 1), rat(-1, 30));
        assert_eq!(bessel_coefficient(2, 0), rat(1, 15));
    }

    #[test]
    fn ground_state_moments() {
        let rm = RadialMoments::new(1, 0);
        // ∫ R₁₀² r² dr = 1 and ∫ R₁₀² r⁴ dr = 3
        assert_eq!(rm.moment(2) * rm.moment(2) * &rm.norm_sq, rat(1, 1));
        assert_eq!(rm.moment(2) * rm.moment(4) * &rm.norm_sq, rat(3, 1));
        assert_eq!(survival_series_coefficient(1, 1).unwrap(), rat(-1, 1));
    }

    #[test]
    fn integrand_branch_is_real() {
        let v = ionization_integrand(1.0).unwrap();
        let expected = 256.0 * PI * (-PI).exp() * ((PI).tanh().recip() + 1.0) / (3.0 * 32.0);
        assert!((v - expected).abs() < 1e-13 * expected);
        assert_eq!(ionization_integrand(0.0).unwrap(), 0.0);
        assert!(ionization_integrand(-1.0).is_err());
    }

    #[test]
    fn params_validate() {
        assert!(HydrogenParams::new(-1.0, 3).is_err());
        assert!(HydrogenParams::new(1.0, 0).is_err());
        assert!(HydrogenParams::new(0.5, 10).is_ok());
    }
}
