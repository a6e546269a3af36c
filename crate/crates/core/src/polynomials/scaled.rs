//! Log-scaled real numbers.
//!
//! A [`Scaled`] value is `mantissa * exp(log_scale)`. Hyperbolic closed forms
//! grow like `exp(n * omega)`, so for large `n` they are kept in this form and
//! only ever combined through ratios, sums of same-order terms, or
//! normalized differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Real;

/// Arguments above this are evaluated with the exponential factored out.
/// 300 for `f64`; smaller for narrower types so that two scaled mantissas can
/// still be multiplied without overflow.
pub fn scale_threshold<T: Real>() -> T {
    let half_range = T::max_value().ln() / T::lit(2.0);
    T::min(T::lit(300.0), half_range)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled<T> {
    pub mantissa: T,
    pub log_scale: T,
}

impl<T: Real> Scaled<T> {
    pub fn new(mantissa: T, log_scale: T) -> Self {
        Scaled { mantissa, log_scale }.normalized()
    }

    pub fn from_value(v: T) -> Self {
        Scaled { mantissa: v, log_scale: T::zero() }
    }

    pub fn zero() -> Self {
        Self::from_value(T::zero())
    }

    /// The plain value; infinite when it does not fit.
    pub fn value(&self) -> T {
        if self.mantissa == T::zero() {
            return T::zero();
        }
        self.mantissa * self.log_scale.exp()
    }

    /// `ln |value|`, or `-inf` for zero.
    pub fn ln_abs(&self) -> T {
        self.mantissa.abs().ln() + self.log_scale
    }

    /// `self / other` as a plain number.
    pub fn ratio(&self, other: &Self) -> T {
        if self.mantissa == T::zero() {
            return T::zero();
        }
        (self.mantissa / other.mantissa) * (self.log_scale - other.log_scale).exp()
    }

    pub fn abs(&self) -> Self {
        Scaled { mantissa: self.mantissa.abs(), log_scale: self.log_scale }
    }

    pub fn is_sign_negative(&self) -> bool {
        self.mantissa < T::zero()
    }

    pub fn scale_by(&self, k: T) -> Self {
        Scaled::new(self.mantissa * k, self.log_scale)
    }

    /// Moves an out-of-range mantissa into the exponent.
    fn normalized(self) -> Self {
        let m = self.mantissa;
        if m == T::zero() || !m.is_finite() {
            return self;
        }
        let bound = scale_threshold::<T>().exp();
        let a = m.abs();
        if a > bound || a < T::one() / bound {
            Scaled { mantissa: m.signum(), log_scale: self.log_scale + a.ln() }
        } else {
            self
        }
    }

    /// Both mantissas rescaled to the larger of the two exponents.
    fn aligned(a: &Self, b: &Self) -> (T, T, T) {
        if a.mantissa == T::zero() {
            return (T::zero(), b.mantissa, b.log_scale);
        }
        if b.mantissa == T::zero() {
            return (a.mantissa, T::zero(), a.log_scale);
        }
        let e = T::max(a.log_scale, b.log_scale);
        (
            a.mantissa * (a.log_scale - e).exp(),
            b.mantissa * (b.log_scale - e).exp(),
            e,
        )
    }
}

impl<T: Real> Add for Scaled<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b, e) = Self::aligned(&self, &rhs);
        Scaled::new(a + b, e)
    }
}

impl<T: Real> Sub for Scaled<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for Scaled<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Scaled { mantissa: -self.mantissa, log_scale: self.log_scale }
    }
}

impl<T: Real> Mul for Scaled<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Scaled::new(self.mantissa * rhs.mantissa, self.log_scale + rhs.log_scale)
    }
}

impl<T: Real> Div for Scaled<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Scaled::new(self.mantissa / rhs.mantissa, self.log_scale - rhs.log_scale)
    }
}

/// `(a - b) / max(|a|, |b|)`, zero when both vanish.
pub fn normalized_difference<T: Real>(a: &Scaled<T>, b: &Scaled<T>) -> T {
    let (x, y, _) = Scaled::aligned(a, b);
    let scale = T::max(x.abs(), y.abs());
    if scale == T::zero() {
        T::zero()
    } else {
        (x - y) / scale
    }
}

/// `sinh(a)` for `a >= 0`.
pub fn sinh_scaled<T: Real>(a: T) -> Scaled<T> {
    if a > scale_threshold::<T>() {
        Scaled { mantissa: -(-(a + a)).exp_m1() / T::lit(2.0), log_scale: a }
    } else {
        Scaled::from_value(a.sinh())
    }
}

/// `cosh(a)` for `a >= 0`.
pub fn cosh_scaled<T: Real>(a: T) -> Scaled<T> {
    if a > scale_threshold::<T>() {
        Scaled { mantissa: (T::one() + (-(a + a)).exp()) / T::lit(2.0), log_scale: a }
    } else {
        Scaled::from_value(a.cosh())
    }
}
