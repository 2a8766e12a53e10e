use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

// B_{2k} / (2k (2k - 1))
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

const SHIFT_RADIUS: f64 = 15.0;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of `ln Γ(z)` up to multiples of `2πi` in the
/// imaginary part (only `exp` of the result is meaningful for the phase).
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Argument(format!("Γ has a pole at {z}")));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Argument(format!("non-finite argument {z}")));
    }
    if z.re < 0.5 {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_complex(one_minus)?);
    }
    let mut shifted = z;
    let mut log_prod = Complex64::new(0.0, 0.0);
    while shifted.norm() < SHIFT_RADIUS {
        log_prod += shifted.ln();
        shifted += 1.0;
    }
    Ok(stirling(shifted) - log_prod)
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}

// ln sin(πz), kept finite for large |Im z|
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    if w.im.abs() < 20.0 {
        return w.sin().ln();
    }
    let i = Complex64::i();
    if w.im > 0.0 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw})
        -i * w + (i * 0.5 * (Complex64::new(1.0, 0.0) - (2.0 * i * w).exp())).ln()
    } else {
        // sin w = -(i/2) e^{iw} (1 - e^{-2iw})
        i * w + (-i * 0.5 * (Complex64::new(1.0, 0.0) - (-2.0 * i * w).exp())).ln()
    }
}

/// `|Γ(z)|` for complex `z` away from the poles.
pub fn gamma_abs_complex(z: Complex64) -> Result<f64> {
    Ok(ln_gamma_complex(z)?.re.exp())
}

/// `1/Γ(z)`, which is entire; zero at the poles of Γ.
pub(crate) fn recip_gamma(z: Complex64) -> Complex64 {
    match ln_gamma_complex(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}
