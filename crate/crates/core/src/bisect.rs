//! Bracketed bisection on a normalized residual.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default stopping width for the bound equations.
pub const DEFAULT_WIDTH: f64 = 1e-13;

const MAX_ITERATIONS: u32 = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection<T> {
    pub root: T,
    pub iterations: u32,
    /// Residual at `root`, in whatever normalization the caller's function uses.
    pub residual: T,
}

/// Residuals at or below this many ulps of 1 count as an exact zero.
const ZERO_ULPS: f64 = 4.0;

/// Bisects `f` on `[lo, hi]` until the bracket is no wider than `width`.
///
/// `f` should return a residual normalized to O(1) (typically
/// `(lhs - rhs) / max(|lhs|, |rhs|)`), so that "zero" can be judged against
/// machine epsilon. An endpoint whose residual is zero is returned as the
/// root. Otherwise the endpoint residuals must have opposite signs.
pub fn bisect<T, F>(f: F, lo: T, hi: T, width: T) -> Result<Bisection<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    bisect_with_noise(f, lo, hi, width, T::lit(ZERO_ULPS) * T::epsilon())
}

/// [`bisect`] with an explicit noise floor: an endpoint residual of at
/// most `noise` in magnitude is taken as a root.
pub fn bisect_with_noise<T, F>(mut f: F, lo: T, hi: T, width: T, noise: T) -> Result<Bisection<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let is_zero = |r: T| r.abs() <= noise;
    let (mut a, mut b) = (lo, hi);
    let fa = f(a)?;
    let fb = f(b)?;
    if is_zero(fa) {
        return Ok(Bisection { root: a, iterations: 0, residual: fa });
    }
    if is_zero(fb) {
        return Ok(Bisection { root: b, iterations: 0, residual: fb });
    }
    if (fa > T::zero()) == (fb > T::zero()) || fa.is_nan() || fb.is_nan() {
        return Err(Error::BracketSign {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            f_lo: fa.as_f64(),
            f_hi: fb.as_f64(),
        });
    }
    let lo_positive = fa > T::zero();
    let two = T::lit(2.0);
    let mut iterations = 0;
    while b - a > width && iterations < MAX_ITERATIONS {
        let mid = a + (b - a) / two;
        if mid <= a || mid >= b {
            break;
        }
        iterations += 1;
        let fm = f(mid)?;
        if fm == T::zero() {
            a = mid;
            b = mid;
            break;
        }
        if (fm > T::zero()) == lo_positive {
            a = mid;
        } else {
            b = mid;
        }
    }
    let root = a + (b - a) / two;
    let residual = f(root)?;
    Ok(Bisection { root, iterations, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x: f64| Ok((x * x - 2.0) / 2.0), 1.0, 2.0, 1e-14).unwrap();
        assert!((r.root - 2f64.sqrt()).abs() < 1e-14);
        assert!(r.iterations > 40 && r.iterations < 60);
    }

    #[test]
    fn decreasing_function() {
        let r = bisect(|x: f64| Ok(1.0 - x), 0.0, 3.0, 1e-13).unwrap();
        assert!((r.root - 1.0).abs() < 1e-13);
    }

    #[test]
    fn zero_endpoint_is_returned() {
        let r = bisect(|x: f64| Ok(x - 2.0), 1.0, 2.0, 1e-13).unwrap();
        assert_eq!(r.root, 2.0);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn same_sign_is_an_error() {
        let e = bisect(|x: f64| Ok(x * x + 1.0), -1.0, 1.0, 1e-13).unwrap_err();
        assert!(matches!(e, Error::BracketSign { .. }));
    }

    #[test]
    fn f32_stops_at_resolution() {
        let r = bisect(|x: f32| Ok(x - 0.3), 0.0f32, 1.0, 1e-13).unwrap();
        assert!((r.root - 0.3).abs() < 1e-6);
    }
}
