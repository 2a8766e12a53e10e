//! Orthogonal polynomials and spherical Bessel functions.

use crate::{Error, Result};

/// Associated Legendre function `P_l^m(x)` with the Condon–Shortley phase,
/// so `P_1^1(x) = -sqrt(1 - x^2)`.
///
/// Negative `m` follows `P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m`.
pub fn assoc_legendre(l: u32, m: i32, x: f64) -> Result<f64> {
    let am = m.unsigned_abs();
    if am > l {
        return Err(Error::Argument(format!("|m| = {am} exceeds l = {l}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Argument(format!("x = {x} outside [-1, 1]")));
    }
    let positive = legendre_nonneg_m(l, am, x, ((1.0 - x) * (1.0 + x)).sqrt());
    if m >= 0 {
        return Ok(positive);
    }
    // (l-m)!/(l+m)! for m = am > 0
    let ratio: f64 = ((l - am + 1)..=(l + am)).map(|k| 1.0 / k as f64).product();
    let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * ratio * positive)
}

/// `P_l^m(tanh s)` for `m ≥ 0`, with `sqrt(1 - x^2)` taken as `sech s` so
/// the tails keep full relative precision where `tanh s` rounds to `±1`.
pub fn assoc_legendre_tanh(l: u32, m: u32, s: f64) -> Result<f64> {
    if m > l {
        return Err(Error::Argument(format!("m = {m} exceeds l = {l}")));
    }
    Ok(legendre_nonneg_m(l, m, s.tanh(), 1.0 / s.cosh()))
}

fn legendre_nonneg_m(l: u32, m: u32, x: f64, somx2: f64) -> f64 {
    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        pll = (x * (2 * ll - 1) as f64 * pmmp1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: u32, x: f64) -> f64 {
    let mut h_prev = 1.0;
    if n == 0 {
        return h_prev;
    }
    let mut h = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * h - 2.0 * k as f64 * h_prev;
        h_prev = h;
        h = next;
    }
    h
}

/// Generalized Laguerre polynomial `L_n^alpha(x)`, normalised so that
/// `L_n^alpha(0) = binom(n + alpha, n)`.
pub fn laguerre_assoc(n: u32, alpha: f64, x: f64) -> f64 {
    let mut l_prev = 1.0;
    if n == 0 {
        return l_prev;
    }
    let mut l = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * l - (kf + alpha) * l_prev) / (kf + 1.0);
        l_prev = l;
        l = next;
    }
    l
}

/// Spherical Bessel function of the first kind `j_l(x)` for `x >= 0`.
///
/// Uses the power series for small arguments, upward recurrence when
/// `x > l`, and Miller's downward recurrence normalised to `j_0` otherwise.
pub fn spherical_bessel(l: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Argument(format!("spherical_bessel needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if l == 0 { 1.0 } else { 0.0 });
    }
    let lf = l as f64;
    if x * x < 0.1 * (2.0 * lf + 3.0) || x < 1e-3 {
        return Ok(bessel_series(l, x));
    }
    let j0 = x.sin() / x;
    if l == 0 {
        return Ok(j0);
    }
    if x > lf {
        let mut jm = j0;
        let mut j = x.sin() / (x * x) - x.cos() / x;
        for n in 1..l {
            let next = (2 * n + 1) as f64 / x * j - jm;
            jm = j;
            j = next;
        }
        return Ok(j);
    }
    Ok(bessel_miller(l, x, j0))
}

fn bessel_series(l: u32, x: f64) -> f64 {
    // x^l / (2l+1)!!
    let mut lead = 1.0;
    for k in 1..=l {
        lead *= x / (2 * k + 1) as f64;
    }
    let y = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for s in 1..200 {
        term *= y / (s as f64 * (2 * l + 2 * s + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn bessel_miller(l: u32, x: f64, j0: f64) -> f64 {
    // start well above both l and x so the dominant solution has died out
    let start = (l as f64 + x + 20.0 + (40.0 * (l as f64 + x)).sqrt()) as u32 + 1;
    let mut jp = 0.0;
    let mut j = 1e-300;
    let mut at_l = 0.0;
    for n in (1..=start).rev() {
        let jm = (2 * n + 1) as f64 / x * j - jp;
        jp = j;
        j = jm;
        if n - 1 == l {
            at_l = j;
        }
        if j.abs() > 1e250 {
            jp *= 1e-250;
            j *= 1e-250;
            at_l *= 1e-250;
        }
    }
    at_l * (j0 / j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_tanh_keeps_tail_precision() {
        for s in [-3.0, 0.2, 1.7] {
            assert_relative_eq!(assoc_legendre_tanh(3, 2, s).unwrap(), assoc_legendre(3, 2, s.tanh()).unwrap(), max_relative = 1e-12);
        }
        let s = 40.0f64;
        assert_relative_eq!(assoc_legendre_tanh(2, 2, s).unwrap(), 3.0 / s.cosh().powi(2), max_relative = 1e-14);
        assert!(assoc_legendre_tanh(2, 3, 0.0).is_err());
    }

    #[test]
    fn legendre_reference_values() {
        assert_eq!(assoc_legendre(1, 1, 0.0).unwrap(), -1.0);
        assert_eq!(assoc_legendre(1, 0, 0.5).unwrap(), 0.5);
        let x: f64 = 0.3;
        let expect = -3.0 * x * (1.0 - x * x).sqrt();
        assert_relative_eq!(assoc_legendre(2, 1, x).unwrap(), expect, max_relative = 1e-15);
        assert_relative_eq!(expect, -0.858_545_281_275_251_1, max_relative = 1e-15);
    }

    #[test]
    fn legendre_negative_order() {
        let x = 0.4;
        let p = assoc_legendre(2, 1, x).unwrap();
        let pm = assoc_legendre(2, -1, x).unwrap();
        assert_relative_eq!(pm, -p / 6.0, max_relative = 1e-15);
    }

    #[test]
    fn legendre_rejects_bad_arguments() {
        assert!(assoc_legendre(1, 2, 0.0).is_err());
        assert!(assoc_legendre(2, 1, 1.5).is_err());
    }

    #[test]
    fn hermite_reference_values() {
        assert_eq!(hermite(0, 1.7), 1.0);
        assert_eq!(hermite(1, 0.5), 1.0);
        assert_eq!(hermite(4, 1.0), -20.0);
    }

    #[test]
    fn laguerre_reference_values() {
        assert_eq!(laguerre_assoc(0, 3.0, 2.2), 1.0);
        assert_eq!(laguerre_assoc(1, 1.0, 1.0), 1.0);
        assert_relative_eq!(laguerre_assoc(2, 3.0, 0.5), 7.625, max_relative = 1e-15);
    }

    #[test]
    fn bessel_reference_values() {
        assert_eq!(spherical_bessel(0, 0.0).unwrap(), 1.0);
        assert_eq!(spherical_bessel(3, 0.0).unwrap(), 0.0);
        assert!(spherical_bessel(0, std::f64::consts::PI).unwrap().abs() < 1e-16);
        let x: f64 = 1.0;
        let closed = (3.0 / x.powi(3) - 1.0 / x) * x.sin() - 3.0 / (x * x) * x.cos();
        assert_relative_eq!(spherical_bessel(2, 1.0).unwrap(), closed, max_relative = 1e-13);
        assert_relative_eq!(closed, 0.062_035_052_011_373_86, max_relative = 1e-14);
        assert!(spherical_bessel(1, -1.0).is_err());
    }

    #[test]
    fn bessel_branches_agree_at_switchover() {
        for l in [1u32, 4, 9] {
            let lf = l as f64;
            for x in [lf - 1e-9, lf + 1e-9, (0.1 * (2.0 * lf + 3.0)).sqrt()] {
                let a = spherical_bessel(l, x * (1.0 - 1e-12)).unwrap();
                let b = spherical_bessel(l, x * (1.0 + 1e-12)).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-10);
            }
        }
    }
}
