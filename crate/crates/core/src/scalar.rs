//! Scalar abstractions.
//!
//! Everything that only needs field arithmetic (polynomial recurrences,
//! tridiagonal solves, dense matrix assembly, time stepping) is written
//! against [`Scalar`], which is implemented for `f32`, `f64` and the exact
//! [`BigRational`]. Anything involving hyperbolic functions or bisection
//! needs [`Real`], which adds `num_traits::Float`.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, Num, NumCast, Signed, ToPrimitive};

/// Field-like scalar used by the recurrence and linear-algebra code.
pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialOrd + Debug {
    /// Exact conversion of a small integer.
    fn int(v: i64) -> Self;

    /// Absolute value.
    fn abs_val(&self) -> Self;

    /// `false` for infinities and NaN; always `true` for exact types.
    fn is_finite_value(&self) -> bool;

    /// Nearest `f64`, used for reporting and CSV output.
    fn as_f64(&self) -> f64;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

/// Floating-point scalar: everything the hyperbolic closed forms and the
/// bound solvers need.
pub trait Real: Scalar + Float + FloatConst + Copy {
    /// Converts an `f64` constant (tolerances, literals).
    fn lit(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("f64 literal representable")
    }
}

impl Scalar for f64 {
    fn int(v: i64) -> Self {
        v as f64
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn int(v: i64) -> Self {
        v as f32
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
    fn as_f64(&self) -> f64 {
        <f64 as From<f32>>::from(*self)
    }
}

impl Real for f64 {}
impl Real for f32 {}

impl Scalar for BigRational {
    fn int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        true
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact rational `num / den`.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
