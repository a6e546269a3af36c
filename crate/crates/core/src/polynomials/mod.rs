//! The three polynomial families `U_n`, `P_n`, `C_n`.
//!
//! All three obey `p_n = 2x p_{n-1} - p_{n-2}` and differ only in their
//! seeds:
//!
//! | family | `p_0` | `p_1`      |
//! |--------|-------|------------|
//! | `U`    | 1     | `2x`       |
//! | `P`    | -1    | `2x - 4`   |
//! | `C`    | 0     | `4(x - 1)` |
//!
//! `U_n` are the Chebyshev polynomials of the second kind. For `x > 1`,
//! writing `x = cosh(omega)`:
//!
//! * `U_n = sinh((n+1) omega) / sinh(omega)`
//! * `C_n = 4 (x - 1) sinh(n omega) / sinh(omega)`
//! * `P_n = (3x - 4) sinh(n omega) / sinh(omega) - cosh(n omega)`
//!
//! The Crank-Nicolson iteration matrix is assembled from these values (see
//! [`crate::matrix`]); the largest root of `P_m` decides positivity.

mod roots;
mod scaled;

pub use roots::{
    count_interior_roots, isolated_root_p, isolated_root_p_with, positivity_residual,
    IsolatedRoot, P_ROOT_OMEGA_HI, P_ROOT_OMEGA_LO,
};
pub use scaled::{cosh_scaled, normalized_difference, scale_threshold, sinh_scaled, Scaled};

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyKind {
    U,
    P,
    C,
}

impl PolyKind {
    pub const ALL: [PolyKind; 3] = [PolyKind::U, PolyKind::P, PolyKind::C];

    /// `(p_0, p_1)` at `x`.
    pub fn seeds<T: Scalar>(self, x: &T) -> (T, T) {
        let two_x = T::int(2) * x.clone();
        match self {
            PolyKind::U => (T::one(), two_x),
            PolyKind::P => (-T::one(), two_x - T::int(4)),
            PolyKind::C => (T::zero(), T::int(4) * (x.clone() - T::one())),
        }
    }
}

impl fmt::Display for PolyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PolyKind::U => "U",
            PolyKind::P => "P",
            PolyKind::C => "C",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for PolyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" | "u" => Ok(PolyKind::U),
            "P" | "p" => Ok(PolyKind::P),
            "C" | "c" => Ok(PolyKind::C),
            other => Err(Error::Domain(format!("unknown polynomial family {other:?}"))),
        }
    }
}

/// A point at which a family is evaluated, optionally carrying the angle
/// `omega` with `x = cosh(omega)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint<T> {
    pub x: T,
    pub omega: Option<T>,
}

impl<T: Real> EvalPoint<T> {
    pub fn new(x: T) -> Self {
        let omega = if x >= T::one() { Some(x.acosh()) } else { None };
        EvalPoint { x, omega }
    }

    pub fn from_omega(omega: T) -> Result<Self> {
        if !(omega >= T::zero()) || !omega.is_finite() {
            return Err(Error::Domain(format!("omega must be finite and >= 0, got {omega:?}")));
        }
        Ok(EvalPoint { x: omega.cosh(), omega: Some(omega) })
    }
}

/// `p_n(x)` by the three-term recurrence.
pub fn eval_recurrence<T: Scalar>(kind: PolyKind, n: usize, x: &T) -> Result<T> {
    let (mut prev, mut cur) = kind.seeds(x);
    if n == 0 {
        return check_finite(kind, 0, prev);
    }
    let two_x = T::int(2) * x.clone();
    for _ in 1..n {
        let next = two_x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    check_finite(kind, n, cur)
}

/// `[p_0(x), ..., p_{n_max}(x)]`.
pub fn family_values<T: Scalar>(kind: PolyKind, n_max: usize, x: &T) -> Result<Vec<T>> {
    let (p0, p1) = kind.seeds(x);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(p0);
    if n_max >= 1 {
        out.push(p1);
    }
    let two_x = T::int(2) * x.clone();
    for n in 2..=n_max {
        let next = two_x.clone() * out[n - 1].clone() - out[n - 2].clone();
        out.push(next);
    }
    if let Some(n) = out.iter().position(|v| !v.is_finite_value()) {
        return Err(Error::Range(format!("{kind}_{n}({x:?}) overflows")));
    }
    Ok(out)
}

/// `(p_n(x), p_n'(x))` by differentiating the recurrence.
pub fn eval_recurrence_with_derivative<T: Scalar>(kind: PolyKind, n: usize, x: &T) -> Result<(T, T)> {
    let (mut p0, mut p1) = kind.seeds(x);
    let (mut d0, mut d1) = match kind {
        PolyKind::U | PolyKind::P => (T::zero(), T::int(2)),
        PolyKind::C => (T::zero(), T::int(4)),
    };
    if n == 0 {
        return Ok((check_finite(kind, 0, p0)?, d0));
    }
    let two = T::int(2);
    let two_x = two.clone() * x.clone();
    for _ in 1..n {
        let p2 = two_x.clone() * p1.clone() - p0;
        let d2 = two.clone() * p1.clone() + two_x.clone() * d1.clone() - d0;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    let p = check_finite(kind, n, p1)?;
    if !d1.is_finite_value() {
        return Err(Error::Range(format!("{kind}_{n}' overflows")));
    }
    Ok((p, d1))
}

fn check_finite<T: Scalar>(kind: PolyKind, n: usize, v: T) -> Result<T> {
    if v.is_finite_value() {
        Ok(v)
    } else {
        Err(Error::Range(format!("{kind}_{n} is outside the floating-point range")))
    }
}

/// Family value at `x = cosh(omega)` through the hyperbolic closed form,
/// with the dominant exponential factored out once `n * omega` is large.
pub fn eval_hyperbolic_scaled<T: Real>(kind: PolyKind, n: usize, omega: T) -> Result<Scaled<T>> {
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be finite and > 0, got {omega:?}")));
    }
    let nf = T::lit(n as f64);
    let sinh_w = Scaled::from_value(omega.sinh());
    Ok(match kind {
        PolyKind::U => sinh_scaled((nf + T::one()) * omega) / sinh_w,
        PolyKind::C => {
            if n == 0 {
                return Ok(Scaled::zero());
            }
            let half = (omega / T::lit(2.0)).sinh();
            // 4 (cosh w - 1) = 8 sinh^2(w/2)
            let factor = T::lit(8.0) * half * half / omega.sinh();
            sinh_scaled(nf * omega).scale_by(factor)
        }
        PolyKind::P => {
            let a = (T::lit(3.0) * omega.cosh() - T::lit(4.0)) / omega.sinh();
            sinh_scaled(nf * omega).scale_by(a) - cosh_scaled(nf * omega)
        }
    })
}

/// Plain value of [`eval_hyperbolic_scaled`]; a range error when it does not
/// fit in `T`.
pub fn eval_hyperbolic<T: Real>(kind: PolyKind, n: usize, omega: T) -> Result<T> {
    let v = eval_hyperbolic_scaled(kind, n, omega)?.value();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range(format!("{kind}_{n}(cosh {omega:?}) overflows")))
    }
}

/// Residuals of the three algebraic identities linking the families.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<T> {
    /// `P_n - (2 U_{n-2} - 4 U_{n-1} + U_n)`
    pub p_from_u: T,
    /// `C_n - (P_n + U_n)`
    pub c_is_p_plus_u: T,
    /// `C_n - 4 (x - 1) U_{n-1}`
    pub c_factored: T,
    /// Largest absolute value among the terms entering the identities.
    pub scale: T,
}

impl<T: Scalar> IdentityReport<T> {
    pub fn max_residual(&self) -> T {
        T::max_of(
            self.p_from_u.abs_val(),
            T::max_of(self.c_is_p_plus_u.abs_val(), self.c_factored.abs_val()),
        )
    }

    /// Every residual is at most `rel_tol * scale`.
    pub fn holds(&self, rel_tol: &T) -> bool {
        self.max_residual() <= rel_tol.clone() * self.scale.clone()
    }
}

pub fn check_identities<T: Scalar>(n: usize, x: &T) -> Result<IdentityReport<T>> {
    if n < 2 {
        return Err(Error::Domain(format!("identity check needs n >= 2, got {n}")));
    }
    let u = family_values(PolyKind::U, n, x)?;
    let p = eval_recurrence(PolyKind::P, n, x)?;
    let c = eval_recurrence(PolyKind::C, n, x)?;
    let two_u = T::int(2) * u[n - 2].clone();
    let four_u = T::int(4) * u[n - 1].clone();
    let factored = T::int(4) * (x.clone() - T::one()) * u[n - 1].clone();

    let terms = [&p, &c, &two_u, &four_u, &u[n], &factored];
    let scale = terms
        .iter()
        .fold(T::zero(), |acc, t| T::max_of(acc, t.abs_val()));

    Ok(IdentityReport {
        p_from_u: p.clone() - (two_u - four_u + u[n].clone()),
        c_is_p_plus_u: c.clone() - (p + u[n].clone()),
        c_factored: c - factored,
        scale,
    })
}
