//! Constant-coefficient tridiagonal matrices and their LU (Thomas) solve.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `tridiag(sub, diag, sup)` of dimension `dim`, with constant bands.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagMatrix<T> {
    pub dim: usize,
    pub sub: T,
    pub diag: T,
    pub sup: T,
}

impl<T: Scalar> TridiagMatrix<T> {
    pub fn new(dim: usize, sub: T, diag: T, sup: T) -> Self {
        TridiagMatrix { dim, sub, diag, sup }
    }

    pub fn is_symmetric(&self) -> bool {
        self.sub == self.sup
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        if i == j {
            self.diag.clone()
        } else if i == j + 1 {
            self.sub.clone()
        } else if j == i + 1 {
            self.sup.clone()
        } else {
            T::zero()
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        let m = self.dim;
        if v.len() != m {
            return Err(Error::Dimension { expected: m, got: v.len() });
        }
        Ok((0..m)
            .map(|i| {
                let mut acc = self.diag.clone() * v[i].clone();
                if i > 0 {
                    acc = acc + self.sub.clone() * v[i - 1].clone();
                }
                if i + 1 < m {
                    acc = acc + self.sup.clone() * v[i + 1].clone();
                }
                acc
            })
            .collect())
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn factor(&self) -> Result<TridiagLu<T>> {
        TridiagLu::new(self)
    }
}

/// LU factors of a constant-band tridiagonal matrix, reusable across
/// right-hand sides. Factoring is O(dim), each solve O(dim).
#[derive(Debug, Clone)]
pub struct TridiagLu<T> {
    sup: T,
    multipliers: Vec<T>,
    pivots: Vec<T>,
}

impl<T: Scalar> TridiagLu<T> {
    pub fn new(a: &TridiagMatrix<T>) -> Result<Self> {
        let m = a.dim;
        let mut pivots: Vec<T> = Vec::with_capacity(m);
        let mut multipliers = Vec::with_capacity(m.saturating_sub(1));
        let mut pivot = a.diag.clone();
        for row in 0..m {
            if row > 0 {
                let l = a.sub.clone() / pivots[row - 1].clone();
                pivot = a.diag.clone() - l.clone() * a.sup.clone();
                multipliers.push(l);
            }
            if pivot == T::zero() || !pivot.is_finite_value() {
                return Err(Error::ZeroPivot { row });
            }
            pivots.push(pivot.clone());
        }
        Ok(TridiagLu { sup: a.sup.clone(), multipliers, pivots })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve_in_place(&self, rhs: &mut [T]) -> Result<()> {
        let m = self.dim();
        if rhs.len() != m {
            return Err(Error::Dimension { expected: m, got: rhs.len() });
        }
        if m == 0 {
            return Ok(());
        }
        for i in 1..m {
            let prev = rhs[i - 1].clone();
            rhs[i] = rhs[i].clone() - self.multipliers[i - 1].clone() * prev;
        }
        rhs[m - 1] = rhs[m - 1].clone() / self.pivots[m - 1].clone();
        for i in (0..m - 1).rev() {
            let next = rhs[i + 1].clone();
            rhs[i] = (rhs[i].clone() - self.sup.clone() * next) / self.pivots[i].clone();
        }
        Ok(())
    }
}
