//! Exact-arithmetic reference implementations. Every f64 is a dyadic
//! rational, so these evaluate the textbook explicit sums with no rounding
//! and convert once at the end.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

fn factorial(n: u32) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, k| acc * int(k))
}

/// H_n(x) = n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!)
pub fn hermite(n: u32, x: f64) -> f64 {
    let two_x = rat(x) * int(2);
    let mut sum = BigRational::zero();
    for m in 0..=n / 2 {
        let term = two_x.pow((n - 2 * m) as i32) / (factorial(m) * factorial(n - 2 * m));
        if m % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    to_f64(&(sum * factorial(n)))
}

/// L_n^a(x) = sum_k (-1)^k binom(n+a, n-k) x^k / k!
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let a = rat(alpha);
    let xr = rat(x);
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let mut binom = BigRational::one();
        for j in 1..=(n - k) {
            binom = binom * (a.clone() + int((k + j) as i64)) / int(j as i64);
        }
        let term = binom * xr.pow(k as i32) / factorial(k);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    to_f64(&sum)
}

/// Condon–Shortley P_l^m from the m-th derivative of the explicit P_l sum.
pub fn assoc_legendre(l: u32, m: i32, x: f64) -> f64 {
    let am = m.unsigned_abs();
    // coefficients of P_l: 2^{-l} sum_k (-1)^k C(l,k) C(2l-2k,l) x^{l-2k}
    let mut coeffs = vec![BigRational::zero(); (l + 1) as usize];
    let binom = |n: u32, k: u32| factorial(n) / (factorial(k) * factorial(n - k));
    for k in 0..=l / 2 {
        let c = binom(l, k) * binom(2 * l - 2 * k, l) / int(1i64 << l);
        let deg = (l - 2 * k) as usize;
        coeffs[deg] = if k % 2 == 0 { c } else { -c };
    }
    for _ in 0..am {
        coeffs = (1..coeffs.len()).map(|d| coeffs[d].clone() * int(d as i64)).collect();
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
    }
    let xr = rat(x);
    let mut poly = BigRational::zero();
    for c in coeffs.iter().rev() {
        poly = poly * xr.clone() + c.clone();
    }
    let mut value = to_f64(&poly) * ((1.0 - x) * (1.0 + x)).powf(am as f64 / 2.0);
    if am % 2 == 1 {
        value = -value;
    }
    if m < 0 {
        let ratio = factorial(l - am) / factorial(l + am);
        value *= to_f64(&ratio);
        if am % 2 == 1 {
            value = -value;
        }
    }
    value
}

/// j_l(x) = sum_s (-1)^s x^{2s+l} / (2^s s! (2l+2s+1)!!)
pub fn spherical_bessel(l: u32, x: f64) -> f64 {
    let xr = rat(x);
    let x2 = xr.clone() * xr.clone();
    // x^l / (2l+1)!!
    let mut lead = BigRational::one();
    for k in 1..=l {
        lead = lead * xr.clone() / int((2 * k + 1) as i64);
    }
    let mut term = lead;
    let mut sum = term.clone();
    let tiny = BigRational::new(BigInt::one(), BigInt::from(10).pow(40));
    for s in 1..10_000u32 {
        term = -term * x2.clone() / int((2 * s * (2 * l + 2 * s + 1)) as i64);
        sum += term.clone();
        if term.abs() < tiny && (s as f64) > x {
            break;
        }
    }
    to_f64(&sum)
}

#[derive(Clone, Debug)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn new(re: f64, im: f64) -> Self {
        CRat { re: rat(re), im: rat(im) }
    }
    fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        }
    }
    fn div(&self, o: &CRat) -> CRat {
        let den = o.re.clone() * o.re.clone() + o.im.clone() * o.im.clone();
        CRat {
            re: (self.re.clone() * o.re.clone() + self.im.clone() * o.im.clone()) / den.clone(),
            im: (self.im.clone() * o.re.clone() - self.re.clone() * o.im.clone()) / den,
        }
    }
    fn add(&self, o: &CRat) -> CRat {
        CRat { re: self.re.clone() + o.re.clone(), im: self.im.clone() + o.im.clone() }
    }
    fn shift(&self, s: u32) -> CRat {
        CRat { re: self.re.clone() + int(s as i64), im: self.im.clone() }
    }
    fn norm_sqr(&self) -> BigRational {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

/// Maclaurin series of 1F1 summed exactly; returns (re, im).
pub fn hyp1f1(a: (f64, f64), b: (f64, f64), z: (f64, f64)) -> (f64, f64) {
    let a = CRat::new(a.0, a.1);
    let b = CRat::new(b.0, b.1);
    let z = CRat::new(z.0, z.1);
    let zmag = to_f64(&z.norm_sqr()).sqrt();
    let mut term = CRat { re: BigRational::one(), im: BigRational::zero() };
    let mut sum = term.clone();
    let eps2 = BigRational::new(BigInt::one(), BigInt::from(10).pow(70));
    for s in 0..100_000u32 {
        term = term.mul(&a.shift(s)).mul(&z).div(&b.shift(s)).div(&CRat { re: int(s as i64 + 1), im: BigRational::zero() });
        sum = sum.add(&term);
        if term.re.is_zero() && term.im.is_zero() {
            break;
        }
        // keep the rationals from growing without bound
        if s % 2 == 1 {
            sum = CRat { re: round(&sum.re), im: round(&sum.im) };
            term = CRat { re: round(&term.re), im: round(&term.im) };
        }
        if (s as f64) > 2.0 * zmag + 10.0 && term.norm_sqr() < eps2.clone() * sum.norm_sqr() {
            break;
        }
    }
    (to_f64(&sum.re), to_f64(&sum.im))
}

// round to 2^-400, far below anything the comparisons can see
fn round(r: &BigRational) -> BigRational {
    let scale = BigInt::one() << 400;
    let n = (r.numer() * &scale) / r.denom();
    BigRational::new(n, scale)
}
