//! Sharp per-mesh CFL bounds for positivity and max-norm contractivity of
//! the Crank-Nicolson matrix, the mesh-independent limits, and the classical
//! theta-method bounds.
//!
//! Each finite bound is found by bisection in the angle variable
//! `omega = arccosh(1 + 1/s)` on a fixed bracket; `s = 1 / (cosh(omega) - 1)`.

use std::fmt;
use std::io::{self, Write};

use crate::bisect::{bisect, bisect_with_noise, DEFAULT_WIDTH};
use crate::error::{Error, Result};
use crate::format::{csv_line, g15};
use crate::polynomials::{normalized_difference, positivity_residual, sinh_scaled, Scaled};
use crate::polynomials::{P_ROOT_OMEGA_HI, P_ROOT_OMEGA_LO};
use crate::scalar::Real;
use crate::Property;

/// Widening of the open left end of the positivity bracket.
const POSITIVITY_WIDENING: f64 = 1e-15;
/// Widening of the closed left end of the contractivity bracket.
const CONTRACTIVITY_WIDENING: f64 = 1e-9;

/// `log((3 + sqrt 5 + sqrt(6 sqrt 5 - 2)) / 4)`, the contractivity angle at `m = 4`.
pub fn contractivity_omega_lo<T: Real>() -> T {
    let five = T::lit(5.0).sqrt();
    ((T::lit(3.0) + five + (T::lit(6.0) * five - T::lit(2.0)).sqrt()) / T::lit(4.0)).ln()
}

/// `log 3`, the limit contractivity angle.
pub fn contractivity_omega_hi<T: Real>() -> T {
    T::lit(3.0).ln()
}

/// `s = 1 / (cosh(omega) - 1)`, written as `1 / (2 sinh^2(omega/2))`.
pub fn s_from_omega<T: Real>(omega: T) -> T {
    let h = (omega / T::lit(2.0)).sinh();
    T::one() / (T::lit(2.0) * h * h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeshSize {
    Finite(usize),
    /// `m -> infinity`.
    Limit,
}

impl fmt::Display for MeshSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshSize::Finite(m) => write!(f, "{m}"),
            MeshSize::Limit => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue<T> {
    /// The property holds for every `s > 0`.
    Unbounded,
    Finite { omega: T, x: T, s: T },
}

impl<T: Real> BoundValue<T> {
    fn from_omega(omega: T) -> Self {
        BoundValue::Finite { omega, x: omega.cosh(), s: s_from_omega(omega) }
    }

    pub fn s(&self) -> Option<T> {
        match self {
            BoundValue::Unbounded => None,
            BoundValue::Finite { s, .. } => Some(*s),
        }
    }

    pub fn omega(&self) -> Option<T> {
        match self {
            BoundValue::Unbounded => None,
            BoundValue::Finite { omega, .. } => Some(*omega),
        }
    }
}

/// A computed CFL restriction `s <= s_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualBound<T> {
    pub property: Property,
    pub m: MeshSize,
    pub value: BoundValue<T>,
    /// Bisection steps taken (0 for closed-form rows).
    pub iterations: u32,
    /// Normalized equation residual at the returned angle.
    pub residual: T,
    /// `|s_m - s_inf|`, computed without cancellation. `None` when unbounded.
    ///
    /// The gap falls below the resolution of `s` itself once `m` exceeds a
    /// few dozen, so sequence comparisons for large `m` should use this.
    pub limit_gap: Option<T>,
}

impl<T: Real> QualBound<T> {
    pub fn s(&self) -> Option<T> {
        self.value.s()
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self.value, BoundValue::Unbounded)
    }

    fn unbounded(property: Property, m: usize) -> Self {
        QualBound {
            property,
            m: MeshSize::Finite(m),
            value: BoundValue::Unbounded,
            iterations: 0,
            residual: T::zero(),
            limit_gap: None,
        }
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::Domain("mesh size m must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// Largest `s` for which `A_m(s)` is entrywise nonnegative.
pub fn positivity_bound<T: Real>(m: usize) -> Result<QualBound<T>> {
    positivity_bound_with(m, T::lit(DEFAULT_WIDTH))
}

pub fn positivity_bound_with<T: Real>(m: usize, width: T) -> Result<QualBound<T>> {
    check_m(m)?;
    let lo = T::lit(P_ROOT_OMEGA_LO) - T::lit(POSITIVITY_WIDENING);
    let hi = T::lit(P_ROOT_OMEGA_HI);
    let b = bisect(|w| positivity_residual(m, w), lo, hi, width)?;
    Ok(QualBound {
        property: Property::Positivity,
        m: MeshSize::Finite(m),
        value: BoundValue::from_omega(b.root),
        iterations: b.iterations,
        residual: b.residual,
        limit_gap: Some(positivity_gap(m, b.root)),
    })
}

/// `2(2 - sqrt 2) - s` at the root `omega` of the positivity equation.
///
/// With `delta = coth(m omega) - 1` the equation becomes a quadratic in
/// `e^omega` whose root moves away from `2 + sqrt 2` linearly in `delta`.
fn positivity_gap<T: Real>(m: usize, omega: T) -> T {
    let two = T::lit(2.0);
    let sqrt8 = T::lit(8.0).sqrt();
    let delta = two / (two * T::lit(m as f64) * omega).exp_m1();
    let t0 = two + T::SQRT_2();
    let lin = two * delta + delta * delta;
    let dt = (two * lin / ((T::lit(8.0) + lin).sqrt() + sqrt8) + delta * (T::lit(4.0) + sqrt8))
        / (two * (two - delta));
    let t = t0 + dt;
    let dx = dt * (T::one() - T::one() / (t * t0)) / two;
    let x0 = (T::lit(6.0) + T::SQRT_2()) / T::lit(4.0);
    let x = x0 + dx;
    dx / ((x0 - T::one()) * (x - T::one()))
}

/// Normalized residual of the contractivity equation for `m >= 4`,
/// positive below the root (where `||A_m||_inf > 1`) and negative above.
///
/// Odd `m`: `2 sinh((m-1)w/4) sinh((m+1)w/4)` against `sinh(w/2) sinh((m+1)w/2)`.
/// Even `m`: `sinh^2(w/2) sinh(mw/2) (sinh((m+2)w/2) - sinh(mw/2))` against
/// `sinh(w) sinh((m+1)w/2) sinh(mw/4) sinh((m-2)w/4)`.
pub fn contractivity_residual<T: Real>(m: usize, omega: T) -> Result<T> {
    if m < 4 || !(omega > T::zero()) {
        return Err(Error::Domain(format!(
            "contractivity equation needs m >= 4 and omega > 0, got m={m}, omega={omega:?}"
        )));
    }
    let mf = T::lit(m as f64);
    let w = omega;
    let q = |k: T| w * k / T::lit(4.0);
    let plain = |v: T| Scaled::from_value(v);
    if m % 2 == 1 {
        let lhs = plain(T::lit(2.0)) * sinh_scaled(q(mf - T::one())) * sinh_scaled(q(mf + T::one()));
        let rhs = plain((w / T::lit(2.0)).sinh()) * sinh_scaled(q(T::lit(2.0) * (mf + T::one())));
        Ok(normalized_difference(&lhs, &rhs))
    } else {
        let half = (w / T::lit(2.0)).sinh();
        // sinh((m+2)w/2) - sinh(mw/2) = 2 cosh((m+1)w/2) sinh(w/2)
        let cosh_mid = crate::polynomials::cosh_scaled(q(T::lit(2.0) * (mf + T::one())));
        let lhs = plain(T::lit(2.0) * half * half * half)
            * sinh_scaled(q(T::lit(2.0) * mf))
            * cosh_mid;
        let rhs = plain(w.sinh())
            * sinh_scaled(q(T::lit(2.0) * (mf + T::one())))
            * sinh_scaled(q(mf))
            * sinh_scaled(q(mf - T::lit(2.0)));
        Ok(normalized_difference(&rhs, &lhs))
    }
}

/// Largest `s` for which `||A_m(s)||_inf <= 1`; unbounded for `m <= 3`.
pub fn contractivity_bound<T: Real>(m: usize) -> Result<QualBound<T>> {
    contractivity_bound_with(m, T::lit(DEFAULT_WIDTH))
}

pub fn contractivity_bound_with<T: Real>(m: usize, width: T) -> Result<QualBound<T>> {
    check_m(m)?;
    if m <= 3 {
        return Ok(QualBound::unbounded(Property::Contractivity, m));
    }
    let lo = contractivity_omega_lo::<T>() - T::lit(CONTRACTIVITY_WIDENING);
    let hi = contractivity_omega_hi::<T>();
    // The root approaches log 3 like e^{-m omega / 2}; once that is below
    // the rounding of the sinh arguments the residual at log 3 is noise.
    let noise = T::lit(64.0) * T::lit(m as f64 + 1.0) * T::epsilon();
    let b = bisect_with_noise(|w| contractivity_residual(m, w), lo, hi, width, noise)?;
    Ok(QualBound {
        property: Property::Contractivity,
        m: MeshSize::Finite(m),
        value: BoundValue::from_omega(b.root),
        iterations: b.iterations,
        residual: b.residual,
        limit_gap: Some(contractivity_gap(m, b.root)),
    })
}

/// `s - 3/2` at the root `omega` of the contractivity equation.
///
/// Writing `q = e^omega = 3 - eta`, both equations give `eta` in terms of
/// `eps = e^{-m omega / 2}` without cancellation, and
/// `s - 3/2 = (3q - 1) eta / (2 (q - 1)^2)`.
fn contractivity_gap<T: Real>(m: usize, omega: T) -> T {
    let two = T::lit(2.0);
    let eps = (-T::lit(m as f64) * omega / two).exp();
    let eps2 = eps * eps;
    let t = (omega / two).exp();
    let q = omega.exp();
    let eta = if m % 2 == 1 {
        two * eps * (t + T::one() / t) - T::lit(3.0) * eps2 + eps2 / q
    } else {
        let ch = (t + T::one() / t) / two;
        let a = (T::one() - eps2) * (t + eps2 / t);
        let num = two * ch * eps2 * (q + T::one() - two / q - eps2 * (T::one() - T::one() / q))
            - T::lit(4.0) * eps * ch * ch * (t - eps2 / t);
        -num / a
    };
    let qm1 = q - T::one();
    (T::lit(3.0) * q - T::one()) * eta / (two * qm1 * qm1)
}

pub fn bound<T: Real>(property: Property, m: usize) -> Result<QualBound<T>> {
    bound_with(property, m, T::lit(DEFAULT_WIDTH))
}

pub fn bound_with<T: Real>(property: Property, m: usize, width: T) -> Result<QualBound<T>> {
    match property {
        Property::Positivity => positivity_bound_with(m, width),
        Property::Contractivity => contractivity_bound_with(m, width),
    }
}

/// `(2 (2 - sqrt 2), 3/2)`: the positivity and contractivity bounds as
/// `m -> infinity`.
pub fn limit_bounds<T: Real>() -> (T, T) {
    let sp = T::lit(2.0) * (T::lit(2.0) - T::SQRT_2());
    let sc = T::lit(1.5);
    debug_assert!(limit_residuals::<T>().iter().all(|r| r.abs() <= T::lit(64.0) * T::epsilon()));
    (sp, sc)
}

/// Residuals of the limit equations at the limit angles:
///
/// * `3 cosh w - 4 - sinh w` at `w = log(2 + sqrt 2)`,
/// * `e^{-w/2} - sinh(w/2)` at `w = log 3`,
/// * `2 (e^w - 1) - sinh(w) / sinh^2(w/2)` at `w = log 3`,
/// * `s(w) - s_inf` for both limit angles.
pub fn limit_residuals<T: Real>() -> [T; 5] {
    let two = T::lit(2.0);
    let wp = (two + T::SQRT_2()).ln();
    let wc = T::lit(3.0).ln();
    let half = (wc / two).sinh();
    [
        T::lit(3.0) * wp.cosh() - T::lit(4.0) - wp.sinh(),
        (-wc / two).exp() - half,
        two * wc.exp_m1() - wc.sinh() / (half * half),
        s_from_omega(wp) - two * (two - T::SQRT_2()),
        s_from_omega(wc) - T::lit(1.5),
    ]
}

/// Row `m = inf` of a bound table.
pub fn limit_bound<T: Real>(property: Property) -> QualBound<T> {
    let two = T::lit(2.0);
    let (omega, x) = match property {
        Property::Positivity => ((two + T::SQRT_2()).ln(), (T::lit(6.0) + T::SQRT_2()) / T::lit(4.0)),
        Property::Contractivity => (T::lit(3.0).ln(), T::lit(5.0) / T::lit(3.0)),
    };
    let (sp, sc) = limit_bounds::<T>();
    let s = match property {
        Property::Positivity => sp,
        Property::Contractivity => sc,
    };
    QualBound {
        property,
        m: MeshSize::Limit,
        value: BoundValue::Finite { omega, x, s },
        iterations: 0,
        residual: T::zero(),
        limit_gap: Some(T::zero()),
    }
}

/// A CFL restriction that may be absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Restriction<T> {
    Finite(T),
    Unbounded,
}

impl<T: Copy> Restriction<T> {
    pub fn finite(&self) -> Option<T> {
        match self {
            Restriction::Finite(v) => Some(*v),
            Restriction::Unbounded => None,
        }
    }
}

/// Classical mesh-independent bounds for the theta-method:
/// positivity `(1 - sqrt(1 - theta)) / (theta (1 - theta))` and
/// contractivity `(2 - theta) / (4 (1 - theta)^2)`.
pub fn theta_literature_bounds<T: Real>(theta: T) -> Result<(Restriction<T>, Restriction<T>)> {
    if !(theta >= T::zero() && theta <= T::one()) {
        return Err(Error::Domain(format!("theta must lie in [0, 1], got {theta:?}")));
    }
    let rest = T::one() - theta;
    if rest == T::zero() {
        return Ok((Restriction::Unbounded, Restriction::Unbounded));
    }
    // rationalized so that theta = 0 needs no special case
    let pos = T::one() / (rest * (T::one() + rest.sqrt()));
    let contr = (T::lit(2.0) - theta) / (T::lit(4.0) * rest * rest);
    Ok((Restriction::Finite(pos), Restriction::Finite(contr)))
}

/// One bound per `m`, optionally followed by the limit row.
pub fn bound_table<T: Real>(
    property: Property,
    ms: &[usize],
    include_limit: bool,
    width: T,
) -> Result<Vec<QualBound<T>>> {
    if ms.is_empty() {
        return Err(Error::Domain("bound table needs at least one m".into()));
    }
    let mut rows = ms
        .iter()
        .map(|&m| bound_with(property, m, width))
        .collect::<Result<Vec<_>>>()?;
    if include_limit {
        rows.push(limit_bound(property));
    }
    Ok(rows)
}

pub const TABLE_HEADER: &str = "property,m,omega,x,s";

/// One CSV line `property,m,omega,x,s`; unbounded rows leave `omega` and
/// `x` empty and write `s = inf`.
pub fn table_row<T: Real>(b: &QualBound<T>) -> String {
    let (omega, x, s) = match b.value {
        BoundValue::Unbounded => (String::new(), String::new(), "inf".to_string()),
        BoundValue::Finite { omega, x, s } => (g15(omega.as_f64()), g15(x.as_f64()), g15(s.as_f64())),
    };
    csv_line([b.property.to_string(), b.m.to_string(), omega, x, s])
}

pub fn write_table_csv<T: Real, W: Write>(out: &mut W, rows: &[QualBound<T>]) -> io::Result<()> {
    writeln!(out, "{TABLE_HEADER}")?;
    for b in rows {
        writeln!(out, "{}", table_row(b))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_of(b: &QualBound<f64>) -> f64 {
        b.s().unwrap()
    }

    #[test]
    fn positivity_small_m() {
        assert!((s_of(&positivity_bound(1).unwrap()) - 1.0).abs() < 1e-12);
        assert!((s_of(&positivity_bound(2).unwrap()) - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((s_of(&positivity_bound(3).unwrap()) - 1.17008648662603).abs() < 1e-11);
        assert!((s_of(&positivity_bound(4).unwrap()) - 1.17144490435458).abs() < 1e-11);
        assert!((s_of(&positivity_bound(7).unwrap()) - 1.17157279442419).abs() < 1e-11);
    }

    #[test]
    fn contractivity_small_m() {
        for m in 1..=3 {
            assert!(contractivity_bound::<f64>(m).unwrap().is_unbounded());
        }
        assert!((s_of(&contractivity_bound(4).unwrap()) - (1.0 + 5f64.sqrt())).abs() < 1e-10);
        assert!((s_of(&contractivity_bound(5).unwrap()) - 2.0).abs() < 1e-10);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((s_of(&contractivity_bound(7).unwrap()) - golden).abs() < 1e-10);
        assert!((s_of(&contractivity_bound(9).unwrap()) - 1.535183758488).abs() < 1e-10);
        assert!((s_of(&contractivity_bound(10).unwrap()) - 1.52295268698465).abs() < 1e-10);
        assert!((s_of(&contractivity_bound(20).unwrap()) - 1.50009035013872).abs() < 1e-10);
    }

    #[test]
    fn m5_angle_is_twice_arccsch_2() {
        let w = contractivity_bound::<f64>(5).unwrap().value.omega().unwrap();
        assert!((w - 2.0 * 0.5f64.asinh()).abs() < 1e-12);
    }

    #[test]
    fn m_zero_rejected() {
        assert!(positivity_bound::<f64>(0).is_err());
        assert!(contractivity_bound::<f64>(0).is_err());
    }

    #[test]
    fn residual_sign_conventions() {
        let lo = contractivity_omega_lo::<f64>() - 1e-9;
        let hi = contractivity_omega_hi::<f64>();
        for m in 4..40 {
            assert!(contractivity_residual(m, lo).unwrap() > 0.0, "m={m}");
            assert!(contractivity_residual(m, hi).unwrap() < 0.0, "m={m}");
        }
        assert!(contractivity_residual(3, 1.0f64).is_err());
    }

    #[test]
    fn residuals_at_roots() {
        for m in [1, 2, 5, 50, 1000, 10_000] {
            assert!(positivity_bound::<f64>(m).unwrap().residual.abs() <= 1e-11);
        }
        for m in [4, 5, 6, 51, 200, 1001, 10_000] {
            assert!(contractivity_bound::<f64>(m).unwrap().residual.abs() <= 1e-11, "m={m}");
        }
    }

    #[test]
    fn gaps_match_direct_subtraction() {
        let (sp, sc) = limit_bounds::<f64>();
        for m in 1..=8 {
            let b = positivity_bound::<f64>(m).unwrap();
            let direct = sp - s_of(&b);
            assert!((b.limit_gap.unwrap() - direct).abs() <= 1e-12 + 1e-9 * direct, "m={m}");
        }
        for m in 4..=16 {
            let b = contractivity_bound::<f64>(m).unwrap();
            let direct = s_of(&b) - sc;
            assert!((b.limit_gap.unwrap() - direct).abs() <= 1e-11 + 1e-9 * direct, "m={m}");
        }
    }

    #[test]
    fn gaps_follow_leading_asymptotics() {
        // positivity: gap ~ k e^{-2 m w}; contractivity odd: gap ~ k' e^{-m w/2}
        for m in [60usize, 100, 150] {
            let g1 = positivity_bound::<f64>(m).unwrap().limit_gap.unwrap();
            let g2 = positivity_bound::<f64>(m + 1).unwrap().limit_gap.unwrap();
            let w = P_ROOT_OMEGA_LO;
            assert!(((g2 / g1).ln() + 2.0 * w).abs() < 1e-6, "m={m}");
        }
        for m in [101usize, 151] {
            let g1 = contractivity_bound::<f64>(m).unwrap().limit_gap.unwrap();
            let g2 = contractivity_bound::<f64>(m + 2).unwrap().limit_gap.unwrap();
            assert!(((g2 / g1).ln() + 3f64.ln()).abs() < 1e-6, "m={m}");
        }
    }

    #[test]
    fn limits() {
        let (sp, sc) = limit_bounds::<f64>();
        assert!((sp - 1.171572875).abs() < 1e-9);
        assert_eq!(sc, 1.5);
        for r in limit_residuals::<f64>() {
            assert!(r.abs() < 1e-14);
        }
    }

    #[test]
    fn theta_bounds() {
        let (p, c) = theta_literature_bounds(0.5f64).unwrap();
        let (sp, sc) = limit_bounds::<f64>();
        assert!((p.finite().unwrap() - sp).abs() < 1e-12);
        assert!((c.finite().unwrap() - sc).abs() < 1e-12);
        assert_eq!(theta_literature_bounds(1.0f64).unwrap(), (Restriction::Unbounded, Restriction::Unbounded));
        let (p, c) = theta_literature_bounds(0.0f64).unwrap();
        assert_eq!((p, c), (Restriction::Finite(0.5), Restriction::Finite(0.5)));
        assert!(theta_literature_bounds(1.5f64).is_err());
        assert!(theta_literature_bounds(-0.1f64).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = bound_table(Property::Contractivity, &[3, 5], true, 1e-13f64).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].is_unbounded());
        assert_eq!(rows[2].m, MeshSize::Limit);
        assert!(bound_table::<f64>(Property::Positivity, &[], true, 1e-13).is_err());
        let mut buf = Vec::new();
        write_table_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "property,m,omega,x,s");
        assert_eq!(lines[1], "contractivity,3,,,inf");
        let fields: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(fields[..2], ["contractivity", "5"]);
        assert!((fields[2].parse::<f64>().unwrap() - 0.962423650119206).abs() < 1e-12);
        assert!((fields[4].parse::<f64>().unwrap() - 2.0).abs() < 1e-10);
        assert_eq!(lines[3], "contractivity,inf,1.09861228866811,1.66666666666667,1.5");
    }

    #[test]
    fn works_in_f32() {
        let b = contractivity_bound_with::<f32>(5, 1e-6).unwrap();
        assert!((b.s().unwrap() - 2.0).abs() < 1e-3);
        let p = positivity_bound_with::<f32>(2, 1e-6).unwrap();
        assert!((p.s().unwrap() - 1.1547).abs() < 1e-3);
    }
}
