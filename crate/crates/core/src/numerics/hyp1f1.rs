//! Kummer's confluent hypergeometric function `1F1(a; b; z)`.
//!
//! For `|z| <= SERIES_SWITCH_RADIUS` the Maclaurin series is summed in
//! double-double arithmetic, which absorbs the cancellation the series
//! suffers along the imaginary axis (term sizes up to ~e^|z|). Beyond the
//! switch the two-sided asymptotic expansion is used, each sum truncated at
//! its smallest term.
//!
//! When neither is accurate (large |a| with |z| of a few tens, where the
//! series loses more digits than double-double carries and the asymptotic
//! terms grow from the start) the value is continued outward along the ray
//! through `z` by Taylor-stepping Kummer's equation from a radius where the
//! series is still well conditioned.

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::gamma::{ln_gamma_complex, recip_gamma};
use crate::{Error, Result};

/// Switch between the power series and the asymptotic expansion.
pub const SERIES_SWITCH_RADIUS: f64 = 30.0;

const MAX_SERIES_TERMS: usize = 20_000;
const ASYMPTOTIC_TARGET: f64 = 1e-15;
// sum |t_s| / |sum| above which double-double no longer gives ~1e-15
const MAX_SERIES_CONDITION: f64 = 1e15;

fn nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

pub fn hyp1f1_complex(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    if nonpositive_integer(b) {
        return Err(Error::Argument(format!("1F1 undefined for b = {b}")));
    }
    if z == Complex64::new(0.0, 0.0) || a == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if nonpositive_integer(a) {
        return maclaurin(a, b, z);
    }
    if z.norm() <= SERIES_SWITCH_RADIUS {
        let (value, condition) = maclaurin_conditioned(a, b, z)?;
        if condition <= MAX_SERIES_CONDITION {
            return Ok(value.to_c64());
        }
    } else {
        let (value, err) = asymptotic(a, b, z)?;
        if err <= 1e3 * ASYMPTOTIC_TARGET * value.norm() {
            return Ok(value);
        }
    }
    continue_along_ray(a, b, z)
}

pub(crate) fn maclaurin(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    maclaurin_conditioned(a, b, z).map(|(v, _)| v.to_c64())
}

fn maclaurin_conditioned(a: Complex64, b: Complex64, z: Complex64) -> Result<(CDd, f64)> {
    let zd = CDd::from_c64(z);
    let mut term = CDd::from_c64(Complex64::new(1.0, 0.0));
    let mut sum = term;
    let mut magnitude = 1.0;
    for s in 0..MAX_SERIES_TERMS {
        let sf = s as f64;
        let num = CDd {
            re: Dd::from_f64(a.re) + Dd::from_f64(sf),
            im: Dd::from_f64(a.im),
        };
        let den = CDd {
            re: (Dd::from_f64(b.re) + Dd::from_f64(sf)) * Dd::from_f64(sf + 1.0),
            im: Dd::from_f64(b.im) * Dd::from_f64(sf + 1.0),
        };
        term = term * num * zd / den;
        sum = sum + term;
        let t = term.norm_f64();
        magnitude += t;
        let ratio = (a + sf + 1.0).norm() * z.norm() / ((b + sf + 1.0).norm() * (sf + 2.0));
        if t == 0.0 || (ratio < 0.5 && t <= 1e-33 * sum.norm_f64()) {
            return Ok((sum, magnitude / sum.norm_f64()));
        }
    }
    Err(Error::Series {
        function: "1F1 series",
        terms: MAX_SERIES_TERMS,
        partial: sum.to_c64(),
    })
}

fn cdd(re: f64, im: f64) -> CDd {
    CDd::from_c64(Complex64::new(re, im))
}

// Integrates z w'' + (b - z) w' - a w = 0 from a well-conditioned start
// point on the ray to `z` with local Taylor expansions.
fn continue_along_ray(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    let dir = z / z.norm();
    let mut radius = z.norm().min(SERIES_SWITCH_RADIUS);
    let (mut w, mut dw) = loop {
        let z0 = dir * radius;
        let (w, c0) = maclaurin_conditioned(a, b, z0)?;
        let (m1, c1) = maclaurin_conditioned(a + 1.0, b + 1.0, z0)?;
        if (c0 <= MAX_SERIES_CONDITION && c1 <= MAX_SERIES_CONDITION) || radius < 0.25 {
            break (w, CDd::from_c64(a / b) * m1);
        }
        radius *= 0.5;
    };
    let target = z.norm();
    let neg_one = cdd(-1.0, 0.0);
    while radius < target {
        let rate = 1.0 + a.norm() / radius;
        let step = (0.5 * radius).min(1.5 / rate).min(target - radius);
        let z0 = CDd::from_c64(dir * radius);
        let h = CDd::from_c64(dir * step);
        let b_minus_z0 = CDd::from_c64(b) + neg_one * z0;

        // c_{n+2} = [(z0 - b - n)(n+1) c_{n+1} + (n + a) c_n] / (z0 (n+2)(n+1))
        let (mut c_prev, mut c_cur) = (w, dw);
        let mut hp = h;
        let mut value = w + dw * h;
        let mut deriv = dw;
        let scale = w.norm_f64() + dw.norm_f64() * step;
        let mut small = 0;
        for n in 0..MAX_SERIES_TERMS {
            let nf = n as f64;
            let lhs = (neg_one * (b_minus_z0 + cdd(nf, 0.0))) * cdd(nf + 1.0, 0.0) * c_cur;
            let rhs = (CDd::from_c64(a) + cdd(nf, 0.0)) * c_prev;
            let c_next = (lhs + rhs) / (z0 * cdd((nf + 2.0) * (nf + 1.0), 0.0));
            deriv = deriv + cdd(nf + 2.0, 0.0) * c_next * hp;
            hp = hp * h;
            let t = c_next * hp;
            value = value + t;
            c_prev = c_cur;
            c_cur = c_next;
            small = if t.norm_f64() <= 1e-33 * scale { small + 1 } else { 0 };
            if small >= 2 {
                break;
            }
        }
        w = value;
        dw = deriv;
        radius += step;
    }
    Ok(w.to_c64())
}

// Sum of (p)_s (q)_s / s! w^s truncated at the smallest term.
fn asymptotic_sum(p: Complex64, q: Complex64, w: Complex64) -> (Complex64, f64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    for s in 0..500 {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) * w / (sf + 1.0);
        let n = next.norm();
        if n >= last || n == 0.0 {
            return (sum, if n == 0.0 { 0.0 } else { last });
        }
        sum += next;
        term = next;
        last = n;
        if n <= ASYMPTOTIC_TARGET * 1e-3 * sum.norm() {
            return (sum, n);
        }
    }
    (sum, last)
}

fn asymptotic(a: Complex64, b: Complex64, z: Complex64) -> Result<(Complex64, f64)> {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let ln_z = z.ln();
    let lg_b = ln_gamma_complex(b)?;
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };

    // e^{±iπa} z^{-a} / Γ(b-a) · Σ (a)_s (a-b+1)_s / s! (-z)^{-s}
    let (s1, e1) = asymptotic_sum(a, a - b + one, -z.inv());
    // phases kept in separate factors; summing them first loses ~|z| ulp
    let pref1 = (lg_b - a * ln_z).exp() * (sign * i * std::f64::consts::PI * a).exp() * recip_gamma(b - a);
    // e^z z^{a-b} / Γ(a) · Σ (b-a)_s (1-a)_s / s! z^{-s}
    let (s2, e2) = asymptotic_sum(b - a, one - a, z.inv());
    let pref2 = (lg_b + (a - b) * ln_z).exp() * z.exp() * recip_gamma(a);

    let value = pref1 * s1 + pref2 * s2;
    let err = pref1.norm() * e1 + pref2.norm() * e2;
    Ok((value, err))
}
