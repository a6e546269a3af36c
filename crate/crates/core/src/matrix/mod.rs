//! The semi-discrete heat operator `B_h` and the Crank-Nicolson iteration
//! matrix `A_m = (I - (s/2) T)^{-1} (I + (s/2) T)`, `T = tridiag(1, -2, 1)`.
//!
//! `A_m` is built two ways: numerically by tridiagonal solves
//! ([`build_a_numeric`]) and from the polynomial representation
//! ([`build_a_closed`], [`build_a_closed_scaled`]).

mod closed;

pub use closed::{
    build_a_closed, build_a_closed_scaled, entry_terms, inf_norm_closed, inf_norm_closed_scaled,
    EntryTerms,
};
pub use crate::tridiag::{TridiagLu, TridiagMatrix};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Uniform interior mesh on `[0, 1]` with `m` unknowns and diffusion `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig<T> {
    m: usize,
    h: T,
    d: T,
}

impl<T: Scalar> GridConfig<T> {
    pub fn new(m: usize, d: T) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("grid needs m >= 1".into()));
        }
        if !(d > T::zero()) {
            return Err(Error::Domain(format!("diffusion must be positive, got {d:?}")));
        }
        let h = T::one() / T::int(m as i64 + 1);
        Ok(GridConfig { m, h, d })
    }

    /// `d = 1`.
    pub fn unit(m: usize) -> Result<Self> {
        Self::new(m, T::one())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> &T {
        &self.h
    }

    pub fn d(&self) -> &T {
        &self.d
    }

    /// Grid abscissa `x_i = i h`, 1-based.
    pub fn node(&self, i: usize) -> T {
        T::int(i as i64) * self.h.clone()
    }

    /// `s = d tau / h^2`.
    pub fn cfl(&self, tau: &T) -> T {
        self.d.clone() * tau.clone() / (self.h.clone() * self.h.clone())
    }
}

/// A CFL coefficient `s` together with `x = 1 + 1/s`.
#[derive(Debug, Clone, PartialEq)]
pub struct CflPoint<T> {
    s: T,
    x: T,
    tau: Option<T>,
}

impl<T: Scalar> CflPoint<T> {
    pub fn from_s(s: T) -> Result<Self> {
        if !(s > T::zero()) || !s.is_finite_value() {
            return Err(Error::Domain(format!("CFL coefficient must be finite and > 0, got {s:?}")));
        }
        let x = T::one() + T::one() / s.clone();
        Ok(CflPoint { s, x, tau: None })
    }

    pub fn from_x(x: T) -> Result<Self> {
        if !(x > T::one()) || !x.is_finite_value() {
            return Err(Error::Domain(format!("x must be finite and > 1, got {x:?}")));
        }
        let s = T::one() / (x.clone() - T::one());
        Ok(CflPoint { s, x, tau: None })
    }

    pub fn from_tau(grid: &GridConfig<T>, tau: T) -> Result<Self> {
        if !(tau > T::zero()) {
            return Err(Error::Domain(format!("time step must be positive, got {tau:?}")));
        }
        let mut p = Self::from_s(grid.cfl(&tau))?;
        p.tau = Some(tau);
        Ok(p)
    }

    pub fn s(&self) -> &T {
        &self.s
    }

    pub fn x(&self) -> &T {
        &self.x
    }

    pub fn tau(&self) -> Option<&T> {
        self.tau.as_ref()
    }
}

impl<T: Real> CflPoint<T> {
    /// `omega = arccosh(x)`, evaluated as `2 asinh(1 / sqrt(2 s))` to keep
    /// full precision for large `s`.
    pub fn omega(&self) -> T {
        T::lit(2.0) * (T::one() / (T::lit(2.0) * self.s).sqrt()).asinh()
    }

    pub fn from_omega(omega: T) -> Result<Self> {
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(Error::Domain(format!("omega must be finite and > 0, got {omega:?}")));
        }
        let half = (omega / T::lit(2.0)).sinh();
        let s = T::one() / (T::lit(2.0) * half * half);
        Ok(CflPoint { s, x: omega.cosh(), tau: None })
    }
}

/// Dense `m x m` Crank-Nicolson iteration matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CnMatrix<T> {
    m: usize,
    entries: Vec<T>,
    point: CflPoint<T>,
}

impl<T: Scalar> CnMatrix<T> {
    pub(crate) fn from_rows(m: usize, entries: Vec<T>, point: CflPoint<T>) -> Self {
        debug_assert_eq!(entries.len(), m * m);
        CnMatrix { m, entries, point }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn point(&self) -> &CflPoint<T> {
        &self.point
    }

    /// 0-based entry.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.m..(i + 1) * self.m]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.m {
            return Err(Error::Dimension { expected: self.m, got: v.len() });
        }
        Ok((0..self.m)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn max_abs_entry(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, v| T::max_of(acc, v.abs_val()))
    }

    /// `a_ij = a_ji` and `a_ij = a_{m-1-i, m-1-j}` to `tol * max |a|`.
    pub fn is_bisymmetric(&self, tol: &T) -> bool {
        let bound = tol.clone() * self.max_abs_entry();
        let m = self.m;
        (0..m).all(|i| {
            (0..m).all(|j| {
                let a = self.get(i, j).clone();
                (a.clone() - self.get(j, i).clone()).abs_val() <= bound
                    && (a - self.get(m - 1 - i, m - 1 - j).clone()).abs_val() <= bound
            })
        })
    }

    /// Number of distinct entries, where sorted neighbours closer than
    /// `tol * max(|a|, |b|)` count as equal.
    pub fn distinct_entries(&self, tol: &T) -> usize {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        let mut count = 0;
        let mut last: Option<T> = None;
        for x in v {
            match &last {
                Some(l) if x.clone() - l.clone() <= tol.clone() * T::max_of(x.abs_val(), l.abs_val()) => {}
                _ => {
                    count += 1;
                    last = Some(x);
                }
            }
        }
        count
    }

    /// `|| (I - (s/2) T) A - (I + (s/2) T) ||_inf`.
    pub fn defining_residual(&self) -> T {
        let m = self.m;
        let s = self.point.s.clone();
        let half = s.clone() / T::int(2);
        let mut worst = T::zero();
        for i in 0..m {
            let mut row_sum = T::zero();
            for j in 0..m {
                let mut lhs = (T::one() + s.clone()) * self.get(i, j).clone();
                if i > 0 {
                    lhs = lhs - half.clone() * self.get(i - 1, j).clone();
                }
                if i + 1 < m {
                    lhs = lhs - half.clone() * self.get(i + 1, j).clone();
                }
                let rhs = if i == j {
                    T::one() - s.clone()
                } else if i == j + 1 || j == i + 1 {
                    half.clone()
                } else {
                    T::zero()
                };
                row_sum = row_sum + (lhs - rhs).abs_val();
            }
            worst = T::max_of(worst, row_sum);
        }
        worst
    }
}

/// `B_h = (d / h^2) tridiag(1, -2, 1)`.
pub fn build_b<T: Scalar>(grid: &GridConfig<T>) -> TridiagMatrix<T> {
    let k = grid.d.clone() / (grid.h.clone() * grid.h.clone());
    TridiagMatrix::new(grid.m, k.clone(), T::int(-2) * k.clone(), k)
}

/// `I - (s/2) T`, the implicit half of the Crank-Nicolson step.
fn implicit_part<T: Scalar>(m: usize, s: &T) -> TridiagMatrix<T> {
    let half = s.clone() / T::int(2);
    TridiagMatrix::new(m, -half.clone(), T::one() + s.clone(), -half)
}

/// `A_m` by `m` tridiagonal solves against the columns of `I + (s/2) T`.
pub fn build_a_numeric<T: Scalar>(m: usize, point: &CflPoint<T>) -> Result<CnMatrix<T>> {
    if m == 0 {
        return Err(Error::Domain("matrix dimension must be >= 1".into()));
    }
    let s = point.s.clone();
    let lu = implicit_part(m, &s).factor()?;
    let half = s.clone() / T::int(2);
    let mut entries = vec![T::zero(); m * m];
    let mut col = vec![T::zero(); m];
    for j in 0..m {
        col.iter_mut().for_each(|v| *v = T::zero());
        col[j] = T::one() - s.clone();
        if j > 0 {
            col[j - 1] = half.clone();
        }
        if j + 1 < m {
            col[j + 1] = half.clone();
        }
        lu.solve_in_place(&mut col)?;
        for (i, v) in col.iter().enumerate() {
            entries[i * m + j] = v.clone();
        }
    }
    Ok(CnMatrix::from_rows(m, entries, point.clone()))
}

impl<T: Scalar> GridConfig<T> {
    /// Crank-Nicolson matrix for time step `tau` on this grid.
    pub fn cn_matrix(&self, tau: T) -> Result<CnMatrix<T>> {
        build_a_numeric(self.m, &CflPoint::from_tau(self, tau)?)
    }
}

pub fn min_entry<T: Scalar>(a: &CnMatrix<T>) -> T {
    let mut it = a.entries.iter();
    let first = it.next().cloned().unwrap_or_else(T::zero);
    it.fold(first, |acc, v| T::min_of(acc, v.clone()))
}

/// Maximum absolute row sum.
pub fn inf_norm<T: Scalar>(a: &CnMatrix<T>) -> T {
    (0..a.m)
        .map(|i| a.row(i).iter().fold(T::zero(), |acc, v| acc + v.abs_val()))
        .fold(T::zero(), T::max_of)
}

/// Logarithmic max-norm `max_i (a_ii + sum_{j != i} |a_ij|)`.
///
/// This is the usual definition: the diagonal enters with its sign and is
/// not included in the absolute sum. For `B_h` the boundary rows give
/// `-d/h^2` and the interior rows give 0.
pub fn log_norm_inf<T: Scalar>(t: &TridiagMatrix<T>) -> T {
    let m = t.dim;
    let sub = t.sub.abs_val();
    let sup = t.sup.abs_val();
    if m == 0 {
        return T::zero();
    }
    if m == 1 {
        return t.diag.clone();
    }
    let first = t.diag.clone() + sup.clone();
    let last = t.diag.clone() + sub.clone();
    let mut best = T::max_of(first, last);
    if m >= 3 {
        best = T::max_of(best, t.diag.clone() + sub + sup);
    }
    best
}
