//! Exact scalar arithmetic and linear algebra.
//!
//! Two coefficient fields are provided: arbitrary-precision rationals and
//! elements of the cyclotomic field ℚ(ζ_m). Both implement [`Field`], and the
//! linear algebra in [`matrix`] and [`echelon`] is generic over it.

pub mod cyclo;
pub mod echelon;
pub mod fast;
pub mod matrix;
pub mod modp;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use cyclo::{cyclotomic_polynomial, euler_phi, CycloNum};
pub use echelon::{find_relations, Echelon, SparseVec};
pub use fast::FastRational;
pub use matrix::{kernel_basis, rank, solve_in_span, ExactMatrix};

/// Reduced fraction of arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `v` as a rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Returns `Some(v)` when `q` is an integer fitting in an `i64`.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.numer().clone()).ok()
}

/// Exact field arithmetic with values that carry their own context.
///
/// Elements of ℚ(ζ_m) need to know `m`, so neutral elements are produced from
/// an existing value (`zero_like`, `one_like`) instead of from the type alone.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn is_zero_value(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inverse(&self) -> Self;
    /// Embeds a rational in the same field as `self`.
    fn embed_rational(&self, q: &Rational) -> Self;
    /// The element as a rational number, if it lies in ℚ.
    fn to_rational(&self) -> Option<Rational>;
    /// Least common multiple of the denominators of the rational coordinates.
    fn denominator_lcm(&self) -> BigInt;

    fn is_one_value(&self) -> bool {
        self.minus(&self.one_like()).is_zero_value()
    }

    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }

    /// `self -= a * b`.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.minus(&a.times(b));
    }
}

impl Field for Rational {
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn embed_rational(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn denominator_lcm(&self) -> BigInt {
        self.denom().clone()
    }
    fn is_one_value(&self) -> bool {
        One::is_one(self)
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_integer() && b.is_integer() && self.is_integer() {
            let v = self.numer() + a.numer() * b.numer();
            *self = Rational::from_integer(v);
        } else {
            *self += a * b;
        }
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_integer() && b.is_integer() && self.is_integer() {
            let v = self.numer() - a.numer() * b.numer();
            *self = Rational::from_integer(v);
        } else {
            *self -= a * b;
        }
    }
}

/// Least common multiple of two positive integers.
pub(crate) fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b).abs()
}

/// Renders a rational without the `/1` suffix.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
