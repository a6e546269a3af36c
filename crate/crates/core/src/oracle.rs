//! Brute-force thresholds straight from the assembled matrix.
//!
//! The predicates and [`empirical_threshold`] only use
//! [`build_a_numeric`], [`min_entry`] and [`inf_norm`]; they share no code
//! with the polynomial or bound solvers they are checked against.

use std::io::{self, Write};

use crate::bounds::{bound_with, QualBound, Restriction};
use crate::error::{Error, Result};
use crate::format::{csv_line, g15};
use crate::matrix::{build_a_numeric, inf_norm, min_entry, CflPoint};
use crate::scalar::Real;
use crate::Property;

pub const DEFAULT_BRACKET: (f64, f64) = (1e-3, 8.0);
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default acceptance threshold for [`cross_validate`].
pub const DEFAULT_DEVIATION: f64 = 1e-6;

const ENTRY_SLACK: f64 = 1e-12;
const NORM_SLACK: f64 = 1e-12;

/// `min_ij a_ij >= -1e-12 (1 + s)`.
pub fn positivity_predicate<T: Real>(m: usize, s: T) -> Result<bool> {
    let a = build_a_numeric(m, &CflPoint::from_s(s)?)?;
    Ok(min_entry(&a) >= -T::lit(ENTRY_SLACK) * (T::one() + s))
}

/// `||A_m(s)||_inf <= 1 + 1e-12`.
pub fn contractivity_predicate<T: Real>(m: usize, s: T) -> Result<bool> {
    let a = build_a_numeric(m, &CflPoint::from_s(s)?)?;
    Ok(inf_norm(&a) <= T::one() + T::lit(NORM_SLACK))
}

pub fn predicate<T: Real>(property: Property, m: usize, s: T) -> Result<bool> {
    match property {
        Property::Positivity => positivity_predicate(m, s),
        Property::Contractivity => contractivity_predicate(m, s),
    }
}

/// `[s_lo, s_hi]` straddling the point where the property stops holding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdEstimate<T> {
    pub property: Property,
    pub m: usize,
    /// The property holds here.
    pub s_lo: T,
    /// The property fails here.
    pub s_hi: T,
    pub width: T,
}

impl<T: Real> ThresholdEstimate<T> {
    pub fn midpoint(&self) -> T {
        self.s_lo + (self.s_hi - self.s_lo) / T::lit(2.0)
    }
}

/// Bisects the predicate over `s` until `s_hi - s_lo <= tol`.
///
/// Fails with [`Error::Bracket`] unless the property holds at `bracket.0`
/// and fails at `bracket.1`; holding at both ends is how an unbounded case
/// shows up.
pub fn empirical_threshold<T: Real>(
    property: Property,
    m: usize,
    bracket: (T, T),
    tol: T,
) -> Result<ThresholdEstimate<T>> {
    let (mut lo, mut hi) = bracket;
    if !(lo > T::zero() && hi > lo && tol > T::zero()) {
        return Err(Error::Domain(format!("need 0 < lo < hi and tol > 0, got {bracket:?}, {tol:?}")));
    }
    let holds_lo = predicate(property, m, lo)?;
    let holds_hi = predicate(property, m, hi)?;
    if !holds_lo || holds_hi {
        return Err(Error::Bracket { lo: lo.as_f64(), hi: hi.as_f64(), holds_lo, holds_hi });
    }
    while hi - lo > tol {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if predicate(property, m, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdEstimate { property, m, s_lo: lo, s_hi: hi, width: hi - lo })
}

/// Empirical threshold, reporting "holds at both ends" as unbounded.
pub fn empirical_restriction<T: Real>(
    property: Property,
    m: usize,
    bracket: (T, T),
    tol: T,
) -> Result<Restriction<T>> {
    match empirical_threshold(property, m, bracket, tol) {
        Ok(est) => Ok(Restriction::Finite(est.midpoint())),
        Err(Error::Bracket { holds_lo: true, holds_hi: true, .. }) => Ok(Restriction::Unbounded),
        Err(e) => Err(e),
    }
}

/// One mesh size of a cross-validation.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck<T> {
    pub property: Property,
    pub m: usize,
    pub closed_form: Restriction<T>,
    pub empirical: Restriction<T>,
    /// `|closed - empirical|`; zero when both are unbounded, `None` when
    /// exactly one is.
    pub deviation: Option<T>,
    pub passed: bool,
}

/// Compares the solver bound with the brute-force threshold for one `m`.
pub fn cross_check<T: Real>(
    property: Property,
    m: usize,
    tol: T,
    bisect_width: T,
) -> Result<CrossCheck<T>> {
    let bound: QualBound<T> = bound_with(property, m, bisect_width)?;
    let closed_form = match bound.s() {
        Some(s) => Restriction::Finite(s),
        None => Restriction::Unbounded,
    };
    let bracket = (T::lit(DEFAULT_BRACKET.0), T::lit(DEFAULT_BRACKET.1));
    let oracle_tol = T::min(T::lit(DEFAULT_TOL), tol / T::lit(10.0));
    let empirical = empirical_restriction(property, m, bracket, oracle_tol)?;
    let deviation = match (closed_form, empirical) {
        (Restriction::Finite(a), Restriction::Finite(b)) => Some((a - b).abs()),
        (Restriction::Unbounded, Restriction::Unbounded) => Some(T::zero()),
        _ => None,
    };
    let passed = deviation.is_some_and(|d| d <= tol);
    Ok(CrossCheck { property, m, closed_form, empirical, deviation, passed })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossReport<T> {
    pub property: Property,
    pub tol: T,
    pub rows: Vec<CrossCheck<T>>,
}

impl<T: Real> CrossReport<T> {
    /// Largest finite deviation; `None` if some row disagrees on
    /// boundedness.
    pub fn max_deviation(&self) -> Option<T> {
        self.rows
            .iter()
            .try_fold(T::zero(), |acc, r| r.deviation.map(|d| T::max(acc, d)))
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CrossCheck<T>> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

/// Cross-checks every `m` in `1..=m_max`.
pub fn cross_validate<T: Real>(property: Property, m_max: usize, tol: T) -> Result<CrossReport<T>> {
    if m_max == 0 {
        return Err(Error::Domain("m_max must be >= 1".into()));
    }
    let width = T::lit(crate::bisect::DEFAULT_WIDTH);
    let rows = (1..=m_max)
        .map(|m| cross_check(property, m, tol, width))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossReport { property, tol, rows })
}

pub const REPORT_HEADER: &str = "property,m,closed_form_s,empirical_s,abs_deviation";

fn restriction_field<T: Real>(r: &Restriction<T>) -> String {
    match r {
        Restriction::Finite(v) => g15(v.as_f64()),
        Restriction::Unbounded => "inf".into(),
    }
}

pub fn report_row<T: Real>(r: &CrossCheck<T>) -> String {
    csv_line([
        r.property.to_string(),
        r.m.to_string(),
        restriction_field(&r.closed_form),
        restriction_field(&r.empirical),
        r.deviation.map_or_else(|| "inf".to_string(), |d| g15(d.as_f64())),
    ])
}

pub fn write_report_csv<T: Real, W: Write>(out: &mut W, rows: &[CrossCheck<T>]) -> io::Result<()> {
    writeln!(out, "{REPORT_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", report_row(r))?;
    }
    Ok(())
}
