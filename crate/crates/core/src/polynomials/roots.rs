use crate::bisect::{bisect, DEFAULT_WIDTH};
use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{eval_recurrence, PolyKind};

/// `log(2 + sqrt 2)`: limit of the isolated-root angles of `P_n`.
pub const P_ROOT_OMEGA_LO: f64 = 1.2279471772995156;
/// `log(2 + sqrt 3)`: the isolated-root angle of `P_1`.
pub const P_ROOT_OMEGA_HI: f64 = 1.3169578969248166;

/// Widening applied to the open end of the isolated-root bracket.
const OPEN_END_WIDENING: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolatedRoot<T> {
    pub omega: T,
    pub x: T,
    pub iterations: u32,
    /// Normalized residual of the root equation at `omega`.
    pub residual: T,
}

/// Normalized residual of `coth(n w) sinh(w) = 3 cosh(w) - 4`.
///
/// Positive below the root, negative above it.
pub fn positivity_residual<T: Real>(n: usize, omega: T) -> Result<T> {
    if n == 0 || !(omega > T::zero()) {
        return Err(Error::Domain(format!("need n >= 1 and omega > 0, got n={n}, omega={omega:?}")));
    }
    let lhs = omega.sinh() / (T::lit(n as f64) * omega).tanh();
    let rhs = T::lit(3.0) * omega.cosh() - T::lit(4.0);
    let scale = T::max(lhs.abs(), rhs.abs());
    Ok((lhs - rhs) / scale)
}

/// The root of `P_n` lying above 1, as `x_n = cosh(omega_n)`.
pub fn isolated_root_p<T: Real>(n: usize) -> Result<IsolatedRoot<T>> {
    isolated_root_p_with(n, T::lit(DEFAULT_WIDTH))
}

pub fn isolated_root_p_with<T: Real>(n: usize, width: T) -> Result<IsolatedRoot<T>> {
    if n == 0 {
        return Err(Error::Domain("P_0 has no roots".into()));
    }
    let lo = T::lit(P_ROOT_OMEGA_LO) - T::lit(OPEN_END_WIDENING);
    let hi = T::lit(P_ROOT_OMEGA_HI);
    let b = bisect(|w| positivity_residual(n, w), lo, hi, width)?;
    Ok(IsolatedRoot {
        omega: b.root,
        x: b.root.cosh(),
        iterations: b.iterations,
        residual: b.residual,
    })
}

/// Number of sign changes of a family on `(-1, 1)`, sampled on a uniform
/// grid of `512 n` cells. Stretches of samples too close to zero to carry a
/// sign are re-sampled once on a grid 16 times finer.
pub fn count_interior_roots<T: Real>(kind: PolyKind, n: usize) -> Result<usize> {
    if n == 0 {
        return Ok(0);
    }
    let cells = 512 * n;
    let step = T::lit(2.0) / T::lit(cells as f64);
    let at = |j: usize| -T::one() + step * T::lit(j as f64);

    let values = (1..cells)
        .map(|j| eval_recurrence(kind, n, &at(j)))
        .collect::<Result<Vec<T>>>()?;
    let scale = values.iter().fold(T::zero(), |acc, v| T::max(acc, v.abs()));
    let ambiguous = T::lit(64.0) * T::epsilon() * scale;
    let sign = |v: T| -> i8 {
        if v.abs() <= ambiguous {
            0
        } else if v > T::zero() {
            1
        } else {
            -1
        }
    };

    let mut count = 0;
    // (grid index, sign) of the last sample with a definite sign
    let mut last: Option<(usize, i8)> = None;
    for (k, v) in values.iter().enumerate() {
        let j = k + 1;
        let s = sign(*v);
        if s == 0 {
            continue;
        }
        match last {
            Some((i, prev)) if i + 1 == j => {
                if prev != s {
                    count += 1;
                }
            }
            Some((i, prev)) => {
                count += refined_changes(kind, n, at(i), at(j), 16 * (j - i), prev, s, &sign)?;
            }
            None => {}
        }
        last = Some((j, s));
    }
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn refined_changes<T: Real>(
    kind: PolyKind,
    n: usize,
    a: T,
    b: T,
    pieces: usize,
    sign_a: i8,
    sign_b: i8,
    sign: &impl Fn(T) -> i8,
) -> Result<usize> {
    let h = (b - a) / T::lit(pieces as f64);
    let mut prev = sign_a;
    let mut count = 0;
    for k in 1..pieces {
        let s = sign(eval_recurrence(kind, n, &(a + h * T::lit(k as f64)))?);
        if s != 0 && s != prev {
            count += 1;
            prev = s;
        }
    }
    if sign_b != prev {
        count += 1;
    }
    Ok(count)
}
