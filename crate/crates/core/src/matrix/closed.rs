//! `A_m` and its max-norm from the polynomial representation.
//!
//! With `x = 1 + 1/s`, entry `(i, j)` (1-based, `i <= j`) is
//!
//! ```text
//! a_ij = (C_{d+1} + C_{d+3} + ... + C_{m-(j-i)}) / U_m,    d = |i - 1 - (m - j)|
//! ```
//!
//! with `min(i, j, m-i+1, m-j+1)` summands; on the diagonal the last summand
//! `C_m` is replaced by `P_m`. The lower triangle follows by symmetry.

use std::ops::Add;

use crate::error::{Error, Result};
use crate::polynomials::{eval_hyperbolic_scaled, family_values, eval_recurrence, PolyKind, Scaled};
use crate::scalar::{Real, Scalar};

use super::{CflPoint, CnMatrix};

/// Which family values make up one entry of `A_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryTerms {
    /// Indices `n` of the `C_n` summands.
    pub c_indices: Vec<usize>,
    /// `P_m` is also a summand (diagonal entries only).
    pub with_p: bool,
}

/// Summands of entry `(i, j)`, 0-based.
pub fn entry_terms(m: usize, i: usize, j: usize) -> EntryTerms {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    let a = i;
    let b = m - 1 - j;
    let count = a.min(b) + 1;
    let first = a.abs_diff(b) + 1;
    let mut c_indices: Vec<usize> = (0..count).map(|k| first + 2 * k).collect();
    let with_p = i == j;
    if with_p {
        c_indices.pop();
    }
    EntryTerms { c_indices, with_p }
}

fn check_dim(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::Domain("matrix dimension must be >= 1".into()))
    } else {
        Ok(())
    }
}

fn assemble<T: Scalar, V: Clone + Add<Output = V>>(
    m: usize,
    c: &[V],
    p: &V,
    zero: V,
    finish: impl Fn(V) -> T,
) -> Vec<T> {
    let mut entries = vec![T::zero(); m * m];
    for i in 0..m {
        for j in i..m {
            let terms = entry_terms(m, i, j);
            let mut sum = terms
                .c_indices
                .iter()
                .fold(zero.clone(), |acc, &n| acc + c[n].clone());
            if terms.with_p {
                sum = sum + p.clone();
            }
            let v = finish(sum);
            entries[j * m + i] = v.clone();
            entries[i * m + j] = v;
        }
    }
    entries
}

/// `A_m` from the three-term recurrences at `x = 1 + 1/s`. Exact for
/// rational input; a range error when `U_m` leaves the float range.
pub fn build_a_closed<T: Scalar>(m: usize, point: &CflPoint<T>) -> Result<CnMatrix<T>> {
    check_dim(m)?;
    let x = point.x();
    let c = family_values(PolyKind::C, m, x)?;
    let p = eval_recurrence(PolyKind::P, m, x)?;
    let u = eval_recurrence(PolyKind::U, m, x)?;
    let entries = assemble(m, &c, &p, T::zero(), |v| v / u.clone());
    Ok(CnMatrix::from_rows(m, entries, point.clone()))
}

fn scaled_values<T: Real>(m: usize, omega: T) -> Result<(Vec<Scaled<T>>, Scaled<T>, Scaled<T>)> {
    let c = (0..=m)
        .map(|n| eval_hyperbolic_scaled(PolyKind::C, n, omega))
        .collect::<Result<Vec<_>>>()?;
    let p = eval_hyperbolic_scaled(PolyKind::P, m, omega)?;
    let u = eval_hyperbolic_scaled(PolyKind::U, m, omega)?;
    Ok((c, p, u))
}

/// `A_m` from the hyperbolic forms, with every family value carried in
/// log-scaled form. Usable for any `m`.
pub fn build_a_closed_scaled<T: Real>(m: usize, point: &CflPoint<T>) -> Result<CnMatrix<T>> {
    check_dim(m)?;
    let (c, p, u) = scaled_values(m, point.omega())?;
    let entries = assemble(m, &c, &p, Scaled::zero(), |v| v.ratio(&u));
    Ok(CnMatrix::from_rows(m, entries, point.clone()))
}

/// Numerator of the middle-row sum: the row of `A_m` with the largest
/// absolute sum, written as one signed group and the all-positive rest.
fn middle_row_sum<V: Clone + Add<Output = V>>(
    m: usize,
    c: &[V],
    p: &V,
    zero: V,
    abs: impl Fn(V) -> V,
) -> V {
    let sum = |idx: &mut dyn Iterator<Item = usize>| idx.fold(zero.clone(), |acc, n| acc + c[n].clone());
    if m % 2 == 1 {
        let signed = p.clone() + sum(&mut (1..=(m - 1) / 2).map(|n| 2 * n - 1));
        let mut rest = zero.clone();
        // i runs over 0..=(m-3)/2
        for i in 0..(m - 1) / 2 {
            rest = rest + sum(&mut (1..=(m - 2 * i - 1) / 2).map(|n| 2 * n + i));
        }
        abs(signed) + rest.clone() + rest
    } else {
        let half = m / 2;
        let signed = p.clone() + sum(&mut (1..half).map(|n| 2 * n));
        let mut rest = sum(&mut (1..=half).map(|n| 2 * n - 1));
        for i in 1..half {
            rest = rest + sum(&mut (i + 1..=m - i));
        }
        abs(signed) + rest
    }
}

/// `||A_m||_inf` in closed form at `x = 1 + 1/s`.
pub fn inf_norm_closed<T: Scalar>(m: usize, point: &CflPoint<T>) -> Result<T> {
    check_dim(m)?;
    let x = point.x();
    let c = family_values(PolyKind::C, m, x)?;
    let p = eval_recurrence(PolyKind::P, m, x)?;
    let u = eval_recurrence(PolyKind::U, m, x)?;
    Ok(middle_row_sum(m, &c, &p, T::zero(), |v| v.abs_val()) / u)
}

/// [`inf_norm_closed`] with log-scaled family values.
pub fn inf_norm_closed_scaled<T: Real>(m: usize, point: &CflPoint<T>) -> Result<T> {
    check_dim(m)?;
    let (c, p, u) = scaled_values(m, point.omega())?;
    Ok(middle_row_sum(m, &c, &p, Scaled::zero(), |v| v.abs()).ratio(&u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_a_numeric, inf_norm};
    use crate::scalar::rational;
    use num_rational::BigRational;

    #[test]
    fn summand_layout() {
        // m = 3: corner (1,3) has one summand C_1, centre has C_1 + P_3
        assert_eq!(entry_terms(3, 0, 2), EntryTerms { c_indices: vec![1], with_p: false });
        assert_eq!(entry_terms(3, 1, 1), EntryTerms { c_indices: vec![1], with_p: true });
        assert_eq!(entry_terms(3, 0, 0), EntryTerms { c_indices: vec![], with_p: true });
        assert_eq!(entry_terms(4, 1, 2), EntryTerms { c_indices: vec![1, 3], with_p: false });
        for m in 1..12 {
            for i in 0..m {
                for j in 0..m {
                    let t = entry_terms(m, i, j);
                    let n = t.c_indices.len() + usize::from(t.with_p);
                    assert_eq!(n, (i + 1).min(j + 1).min(m - i).min(m - j));
                }
            }
        }
    }

    #[test]
    fn closed_equals_numeric_exactly() {
        for m in 1..=9 {
            for s in [rational(1, 3), rational(1, 1), rational(8, 5), rational(7, 2)] {
                let p = CflPoint::from_s(s).unwrap();
                assert_eq!(build_a_closed(m, &p).unwrap(), build_a_numeric(m, &p).unwrap(), "m={m}");
            }
        }
    }

    #[test]
    fn closed_norm_equals_row_sums_exactly() {
        for m in 1..=10 {
            for s in [rational(1, 2), rational(3, 2), rational(2, 1), rational(11, 3)] {
                let p = CflPoint::from_s(s).unwrap();
                let a = build_a_numeric(m, &p).unwrap();
                assert_eq!(inf_norm_closed(m, &p).unwrap(), inf_norm(&a), "m={m}");
            }
        }
    }

    #[test]
    fn scaled_matches_numeric_in_f64() {
        for m in [1, 2, 7, 30, 120] {
            for s in [0.05f64, 1.2, 1.6, 4.0] {
                let p = CflPoint::from_s(s).unwrap();
                let a = build_a_numeric(m, &p).unwrap();
                let b = build_a_closed_scaled(m, &p).unwrap();
                let scale = a.max_abs_entry();
                for (u, v) in a.entries().iter().zip(b.entries()) {
                    assert!((u - v).abs() <= 1e-9 * scale, "m={m} s={s}");
                }
                let n = inf_norm_closed_scaled(m, &p).unwrap();
                assert!((n - inf_norm(&a)).abs() <= 1e-9 * n, "m={m} s={s}");
            }
        }
    }

    #[test]
    fn recurrence_overflow_is_a_range_error() {
        let p = CflPoint::from_s(0.01f64).unwrap();
        assert!(matches!(build_a_closed(400, &p), Err(Error::Range(_))));
        assert!(build_a_closed_scaled(400, &p).is_ok());
    }

    #[test]
    fn norm_at_contractivity_points() {
        let n = inf_norm_closed(5, &CflPoint::from_s(BigRational::int(2)).unwrap()).unwrap();
        assert_eq!(n, BigRational::int(1));
        let s = 1.0 + 5f64.sqrt();
        let n = inf_norm_closed_scaled(4, &CflPoint::from_s(s).unwrap()).unwrap();
        assert!((n - 1.0).abs() < 1e-13);
    }
}
