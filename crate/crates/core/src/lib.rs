//! Positivity and maximum-norm contractivity of the Crank-Nicolson scheme
//! for the 1-D heat equation `u_t = d u_xx` with homogeneous Dirichlet data.
//!
//! With `m` interior points, `h = 1/(m+1)` and `s = d tau / h^2`, one
//! Crank-Nicolson step is `w_n = A_m(s) w_{n-1}`. [`bounds`] computes the
//! sharp thresholds `s_m` below which `A_m` is entrywise nonnegative or has
//! `||A_m||_inf <= 1`; [`oracle`] recovers the same thresholds by brute force
//! and [`simulator`] steps the scheme directly.
//!
//! Numerical code is generic over [`scalar::Scalar`] (`f32`, `f64`,
//! `BigRational`) or [`scalar::Real`] (the float types); the aliases below
//! fix the common choices.

pub mod bisect;
pub mod bounds;
pub mod error;
pub mod format;
pub mod matrix;
pub mod oracle;
pub mod polynomials;
pub mod scalar;
pub mod simulator;
pub mod tridiag;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

pub use error::{Error, Result};

/// The two qualitative properties under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// `A_m` has no negative entries.
    Positivity,
    /// `||A_m||_inf <= 1`.
    Contractivity,
}

impl Property {
    pub const ALL: [Property; 2] = [Property::Positivity, Property::Contractivity];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Positivity => "positivity",
            Property::Contractivity => "contractivity",
        })
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "positivity" | "p" => Ok(Property::Positivity),
            "contractivity" | "c" => Ok(Property::Contractivity),
            other => Err(Error::Domain(format!("unknown property {other:?}"))),
        }
    }
}

pub type GridF64 = matrix::GridConfig<f64>;
pub type CflPointF64 = matrix::CflPoint<f64>;
pub type CnMatrixF64 = matrix::CnMatrix<f64>;
pub type CnMatrixF32 = matrix::CnMatrix<f32>;
pub type ExactCnMatrix = matrix::CnMatrix<BigRational>;
pub type ExactCflPoint = matrix::CflPoint<BigRational>;
pub type QualBoundF64 = bounds::QualBound<f64>;
pub type QualBoundF32 = bounds::QualBound<f32>;
pub type SimConfigF64 = simulator::SimConfig<f64>;
pub type SimTraceF64 = simulator::SimTrace<f64>;
