//! Globally adaptive Gauss–Kronrod (10/21) quadrature on finite intervals
//! and half-lines.
//!
//! Half-lines are compactified onto `t in [0, 1)`:
//! algebraic tails use `x = x0 + s t/(1-t)`, exponential tails use
//! `x = x0 - s ln(1-t)`. The Kronrod nodes never touch `t = 1`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Values that can be integrated: real or complex.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn to_complex(self) -> Complex64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// How the integrand decays on a half-line, selecting the compactifying map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailDecay {
    /// At least `|x|^-2`.
    Algebraic,
    Exponential,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    Interval(f64, f64),
    /// `[start, +inf)`; `scale` sets where the map puts `t = 1/2`.
    UpperHalfLine { start: f64, scale: f64, decay: TailDecay },
    /// `(-inf, end]`.
    LowerHalfLine { end: f64, scale: f64, decay: TailDecay },
    /// The whole real line, split at `center`.
    Line { center: f64, scale: f64, decay: TailDecay },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_evaluations: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-12,
            rel: 1e-10,
            max_evaluations: 400_000,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance {
            abs,
            rel,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult<V> {
    pub value: V,
    pub error_estimate: f64,
    pub evaluations: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_483_413,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

struct Segment<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
    roundoff: f64,
}

impl<V> PartialEq for Segment<V> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<V> Eq for Segment<V> {}
impl<V> PartialOrd for Segment<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Segment<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn gauss_kronrod<V: QuadValue>(f: &impl Fn(f64) -> V, a: f64, b: f64) -> Segment<V> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = V::zero();
    let mut resabs = fc.magnitude() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kronrod = kronrod + pair * WGK[j];
        resabs += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let diff = (kronrod - gauss) * half;
    let roundoff = 50.0 * f64::EPSILON * resabs * half.abs();
    Segment {
        a,
        b,
        value,
        error: diff.magnitude().max(roundoff),
        roundoff,
    }
}

fn adaptive_interval<V: QuadValue>(
    f: &impl Fn(f64) -> V,
    a: f64,
    b: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult<V>> {
    let first = gauss_kronrod(f, a, b);
    let mut evaluations = 21;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut total_roundoff = first.roundoff;
    let mut heap = BinaryHeap::new();
    let mut settled = V::zero();
    let mut settled_err = 0.0;
    heap.push(first);
    loop {
        // below the accumulated rounding floor no subdivision can help
        let target = tol.abs.max(tol.rel * total.magnitude()).max(2.0 * total_roundoff);
        if total_err <= target || heap.is_empty() {
            return Ok(QuadratureResult {
                value: total,
                error_estimate: total_err,
                evaluations,
            });
        }
        if evaluations + 42 > tol.max_evaluations {
            return Err(Error::Quadrature {
                best: total.to_complex(),
                error_estimate: total_err,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) || (worst.b - worst.a).abs() < 1e-14 * mid.abs().max(1e-300) {
            // cannot split further; keep its contribution as-is
            settled = settled + worst.value;
            settled_err += worst.error;
            if heap.is_empty() {
                return Ok(QuadratureResult {
                    value: total,
                    error_estimate: total_err,
                    evaluations,
                });
            }
            continue;
        }
        let left = gauss_kronrod(f, worst.a, mid);
        let right = gauss_kronrod(f, mid, worst.b);
        evaluations += 42;
        total = total - worst.value + left.value + right.value;
        total_err = total_err - worst.error + left.error + right.error;
        total_roundoff = total_roundoff - worst.roundoff + left.roundoff + right.roundoff;
        heap.push(left);
        heap.push(right);
        // resync the running sums against drift
        if evaluations % (42 * 64) == 0 {
            total = heap.iter().fold(settled, |acc, s| acc + s.value);
            total_err = heap.iter().fold(settled_err, |acc, s| acc + s.error);
        }
    }
}

/// Integrate `f` over `domain` to `max(tol.abs, tol.rel |I|)`.
pub fn integrate_adaptive<V, F>(f: F, domain: Domain, tol: &Tolerance) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    match domain {
        Domain::Interval(a, b) => {
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::Argument(format!("non-finite interval [{a}, {b}]")));
            }
            if a == b {
                return Ok(QuadratureResult {
                    value: V::zero(),
                    error_estimate: 0.0,
                    evaluations: 1,
                });
            }
            adaptive_interval(&f, a, b, tol)
        }
        Domain::UpperHalfLine { start, scale, decay } => {
            check_scale(scale)?;
            let g = |t: f64| {
                let (x, jac) = map_tail(t, scale, decay);
                if jac.is_infinite() {
                    return V::zero();
                }
                f(start + x) * jac
            };
            adaptive_interval(&g, 0.0, 1.0, tol)
        }
        Domain::LowerHalfLine { end, scale, decay } => {
            check_scale(scale)?;
            let g = |t: f64| {
                let (x, jac) = map_tail(t, scale, decay);
                if jac.is_infinite() {
                    return V::zero();
                }
                f(end - x) * jac
            };
            adaptive_interval(&g, 0.0, 1.0, tol)
        }
        Domain::Line { center, scale, decay } => {
            check_scale(scale)?;
            // one pass over t in (-1, 1), odd-symmetric map, so the
            // tolerance applies to the whole line at once
            let g = |t: f64| {
                let (x, jac) = map_tail(t.abs(), scale, decay);
                if jac.is_infinite() {
                    return V::zero();
                }
                f(center + x.copysign(t)) * jac
            };
            adaptive_interval(&g, -1.0, 1.0, tol)
        }
    }
}

fn check_scale(scale: f64) -> Result<()> {
    if scale > 0.0 && scale.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!("half-line scale must be positive, got {scale}")))
    }
}

// the endpoint t = 1 maps to infinity, where a convergent integrand vanishes
fn map_tail(t: f64, scale: f64, decay: TailDecay) -> (f64, f64) {
    let one_minus = 1.0 - t;
    match decay {
        TailDecay::Algebraic => (scale * t / one_minus, scale / (one_minus * one_minus)),
        TailDecay::Exponential => (-scale * (-t).ln_1p(), scale / one_minus),
    }
}

/// Trapezoid rule on uniformly spaced samples.
pub fn trapezoid_uniform<V: QuadValue>(values: &[V], spacing: f64) -> V {
    match values.len() {
        0 | 1 => V::zero(),
        n => {
            let inner = values[1..n - 1].iter().fold(V::zero(), |acc, &v| acc + v);
            (inner + (values[0] + values[n - 1]) * 0.5) * spacing
        }
    }
}
