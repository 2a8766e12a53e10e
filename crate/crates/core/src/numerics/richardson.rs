//! Richardson extrapolation of a sequence `a_N = L + sum_i c_i N^{-p_i}`
//! with arbitrary, distinct exponents, via the E-algorithm.
//!
//! The same code runs over `f64` and over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct AccelerationTable {
    pub raw_sequence: Vec<f64>,
    /// Index `N` of `raw_sequence[0]`.
    pub first_n: u32,
    pub powers: Vec<f64>,
    /// Number of eliminated tail terms.
    pub order: usize,
    pub extrapolated: f64,
    /// Coefficients of `N^{-p_i}`, in the order of `powers`.
    pub fitted_tail: Vec<f64>,
    /// `columns[k][j]` eliminates `k` terms using entries `j..=j+k`.
    pub columns: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactAccelerationTable {
    pub raw_sequence: Vec<BigRational>,
    pub first_n: u32,
    pub powers: Vec<u32>,
    pub extrapolated: BigRational,
    pub fitted_tail: Vec<BigRational>,
}

impl ExactAccelerationTable {
    pub fn to_f64(&self) -> AccelerationTable {
        let raw: Vec<f64> = self.raw_sequence.iter().map(rational_to_f64).collect();
        let powers: Vec<f64> = self.powers.iter().map(|&p| p as f64).collect();
        AccelerationTable {
            first_n: self.first_n,
            order: powers.len(),
            powers,
            extrapolated: rational_to_f64(&self.extrapolated),
            fitted_tail: self.fitted_tail.iter().map(rational_to_f64).collect(),
            columns: vec![raw.clone()],
            raw_sequence: raw,
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Fixed-point decimal rendering of an exact rational, truncated to `digits`.
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    let negative = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let frac = format!("{:0>width$}", frac_part.to_string(), width = digits);
    format!("{}{}.{}", if negative { "-" } else { "" }, int_part, frac)
}

fn check_inputs<P: PartialEq + Copy>(len: usize, powers: &[P]) -> Result<()> {
    if powers.is_empty() {
        return Err(Error::Argument("at least one tail power is required".into()));
    }
    if len < powers.len() + 1 {
        return Err(Error::Argument(format!(
            "{} terms cannot eliminate {} tail powers",
            len,
            powers.len()
        )));
    }
    for (i, p) in powers.iter().enumerate() {
        if powers[..i].contains(p) {
            return Err(Error::Argument("repeated tail power makes the system degenerate".into()));
        }
    }
    Ok(())
}

// E-algorithm; returns the columns of the tableau.
fn e_algorithm<T>(seq: &[T], basis: &[Vec<T>]) -> Result<Vec<Vec<T>>>
where
    T: Clone + Num,
{
    let m = basis.len();
    let mut columns = vec![seq.to_vec()];
    let mut g: Vec<Vec<T>> = basis.to_vec();
    for k in 0..m {
        let e = columns.last().expect("column 0 exists");
        let pivot = &g[k];
        let n = e.len() - 1;
        let mut next_e = Vec::with_capacity(n);
        let mut denoms = Vec::with_capacity(n);
        for j in 0..n {
            let d = pivot[j + 1].clone() - pivot[j].clone();
            if d.is_zero() {
                return Err(Error::Argument("degenerate Richardson step".into()));
            }
            next_e.push((e[j].clone() * pivot[j + 1].clone() - e[j + 1].clone() * pivot[j].clone()) / d.clone());
            denoms.push(d);
        }
        let mut next_g = vec![Vec::new(); m];
        for i in (k + 1)..m {
            next_g[i] = (0..n)
                .map(|j| {
                    (g[i][j].clone() * pivot[j + 1].clone() - g[i][j + 1].clone() * pivot[j].clone())
                        / denoms[j].clone()
                })
                .collect();
        }
        g = next_g;
        columns.push(next_e);
    }
    Ok(columns)
}

// Solve A x = b by Gaussian elimination with largest-pivot selection.
fn solve_dense<T>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Result<Vec<T>>
where
    T: Clone + Num + Signed + PartialOrd,
{
    let n = b.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .expect("non-empty range");
        if a[pivot_row][col].is_zero() {
            return Err(Error::Argument("singular tail-fit system".into()));
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in (col + 1)..n {
            let factor = a[row][col].clone() / a[col][col].clone();
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let delta = factor.clone() * a[col][k].clone();
                a[row][k] = a[row][k].clone() - delta;
            }
            let delta = factor * b[col].clone();
            b[row] = b[row].clone() - delta;
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in (row + 1)..n {
            acc = acc - a[row][k].clone() * x[k].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Ok(x)
}

// Fit L + sum c_i g_i through the last m+1 points.
fn fit_tail<T>(seq: &[T], basis: &[Vec<T>]) -> Result<(T, Vec<T>)>
where
    T: Clone + Num + Signed + PartialOrd,
{
    let m = basis.len();
    let start = seq.len() - (m + 1);
    let rows: Vec<Vec<T>> = (start..seq.len())
        .map(|j| {
            std::iter::once(T::one())
                .chain(basis.iter().map(|g| g[j].clone()))
                .collect()
        })
        .collect();
    let mut x = solve_dense(rows, seq[start..].to_vec())?;
    let tail = x.split_off(1);
    Ok((x.pop().expect("limit entry"), tail))
}

/// Eliminate `N^{-p}` tail terms from `seq`, where `seq[j]` belongs to
/// `N = first_n + j`.
pub fn richardson_extrapolate(first_n: u32, seq: &[f64], powers: &[f64]) -> Result<AccelerationTable> {
    check_inputs(seq.len(), powers)?;
    if first_n == 0 {
        return Err(Error::Argument("sequence index N must start at 1 or above".into()));
    }
    if seq.iter().any(|v| !v.is_finite()) || powers.iter().any(|p| !p.is_finite()) {
        return Err(Error::Argument("non-finite sequence entry or power".into()));
    }
    let basis: Vec<Vec<f64>> = powers
        .iter()
        .map(|&p| (0..seq.len()).map(|j| ((first_n as usize + j) as f64).powf(-p)).collect())
        .collect();
    let columns = e_algorithm(seq, &basis)?;
    let extrapolated = *columns[powers.len()].last().expect("top column is non-empty");
    let (_, fitted_tail) = fit_tail(seq, &basis)?;
    Ok(AccelerationTable {
        raw_sequence: seq.to_vec(),
        first_n,
        powers: powers.to_vec(),
        order: powers.len(),
        extrapolated,
        fitted_tail,
        columns,
    })
}

/// Exact-arithmetic counterpart of [`richardson_extrapolate`] for integer powers.
pub fn richardson_extrapolate_exact(
    first_n: u32,
    seq: &[BigRational],
    powers: &[u32],
) -> Result<ExactAccelerationTable> {
    check_inputs(seq.len(), powers)?;
    if first_n == 0 {
        return Err(Error::Argument("sequence index N must start at 1 or above".into()));
    }
    let basis: Vec<Vec<BigRational>> = powers
        .iter()
        .map(|&p| {
            (0..seq.len())
                .map(|j| {
                    let n = BigInt::from(first_n as usize + j).pow(p);
                    BigRational::new(BigInt::one(), n)
                })
                .collect()
        })
        .collect();
    let columns = e_algorithm(seq, &basis)?;
    let extrapolated = columns[powers.len()].last().expect("top column is non-empty").clone();
    let (limit, fitted_tail) = fit_tail(seq, &basis)?;
    debug_assert_eq!(limit, extrapolated);
    Ok(ExactAccelerationTable {
        raw_sequence: seq.to_vec(),
        first_n,
        powers: powers.to_vec(),
        extrapolated,
        fitted_tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use std::f64::consts::PI;

    #[test]
    fn removes_single_tail_term_exactly() {
        let seq: Vec<f64> = (1..=5).map(|n| 1.0 + 1.0 / (n * n) as f64).collect();
        let t = richardson_extrapolate(1, &seq, &[2.0]).unwrap();
        assert!((t.extrapolated - 1.0).abs() < 1e-15);
        assert!((t.fitted_tail[0] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn accelerates_zeta_two() {
        let mut partial = 0.0;
        let seq: Vec<f64> = (1..=40)
            .map(|n| {
                partial += 1.0 / (n * n) as f64;
                partial
            })
            .collect();
        let t = richardson_extrapolate(1, &seq, &[1.0, 2.0, 3.0]).unwrap();
        assert!((t.extrapolated - PI * PI / 6.0).abs() < 1e-8, "{}", t.extrapolated);
    }

    #[test]
    fn top_entry_matches_tail_fit() {
        let seq: Vec<f64> = (3..=9).map(|n| 2.5 - 0.7 / (n as f64).powi(2) + 0.3 / (n as f64).powi(3)).collect();
        let t = richardson_extrapolate(3, &seq, &[2.0, 3.0]).unwrap();
        assert!((t.extrapolated - 2.5).abs() < 1e-13);
        assert!((t.fitted_tail[0] + 0.7).abs() < 1e-11);
        assert!((t.fitted_tail[1] - 0.3).abs() < 1e-11);
    }

    #[test]
    fn argument_errors() {
        assert!(richardson_extrapolate(1, &[1.0, 2.0], &[2.0, 3.0]).is_err());
        assert!(richardson_extrapolate(1, &[1.0, 2.0, 3.0], &[2.0, 2.0]).is_err());
        assert!(richardson_extrapolate(1, &[1.0, 2.0], &[]).is_err());
        assert!(richardson_extrapolate(0, &[1.0, 2.0], &[2.0]).is_err());
    }

    #[test]
    fn exact_path_is_exact() {
        let limit = BigRational::new(BigInt::from(-7), BigInt::from(3));
        let c2 = BigRational::new(BigInt::from(5), BigInt::from(11));
        let seq: Vec<BigRational> = (2..=6u32)
            .map(|n| {
                let n2 = BigRational::from_integer(BigInt::from(n * n));
                limit.clone() + c2.clone() / n2
            })
            .collect();
        let t = richardson_extrapolate_exact(2, &seq, &[2, 3, 4]).unwrap();
        assert_eq!(t.extrapolated, limit);
        assert_eq!(t.fitted_tail[0], c2);
        assert!(t.fitted_tail[1].is_zero() && t.fitted_tail[2].is_zero());
        assert_eq!(rational_to_decimal(&t.extrapolated, 5), "-2.33333");
    }
}
