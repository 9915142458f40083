//! Rationals stored as reduced `i64` fractions, promoted to big rationals on
//! overflow. Used in the inner loops of the harmonic engine, where entries
//! are almost always small.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Field, Rational};

/// A rational number. Values that fit in `i64 / i64` are always stored in
/// the small form, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FastRational {
    Small(i64, i64),
    Big(Box<Rational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    gcd_u128(a.unsigned_abs(), b.unsigned_abs()) as i128
}

impl FastRational {
    pub fn zero() -> Self {
        FastRational::Small(0, 1)
    }

    pub fn one() -> Self {
        FastRational::Small(1, 1)
    }

    pub fn from_int(v: i64) -> Self {
        FastRational::Small(v, 1)
    }

    /// `num / den` from wide integers, reduced; `den` must be nonzero.
    fn from_i128(num: i128, den: i128) -> Self {
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_i128(num, den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN => FastRational::Small(n, d),
            _ => FastRational::Big(Box::new(Rational::new(BigInt::from(num), BigInt::from(den)))),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        match (i64::try_from(q.numer()), i64::try_from(q.denom())) {
            (Ok(n), Ok(d)) if n != i64::MIN => FastRational::Small(n, d),
            _ => FastRational::Big(Box::new(q.clone())),
        }
    }

    fn from_big(q: Rational) -> Self {
        match (i64::try_from(q.numer()), i64::try_from(q.denom())) {
            (Ok(n), Ok(d)) if n != i64::MIN => FastRational::Small(n, d),
            _ => FastRational::Big(Box::new(q)),
        }
    }

    pub fn to_big(&self) -> Rational {
        match self {
            FastRational::Small(n, d) => Rational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            FastRational::Big(q) => (**q).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FastRational::Small(0, _))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FastRational::Small(n, _) => *n < 0,
            FastRational::Big(q) => q.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            FastRational::Small(_, d) => *d == 1,
            FastRational::Big(q) => q.is_integer(),
        }
    }
}

impl Field for FastRational {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }

    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::one()
    }

    fn plus(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (FastRational::Small(a, b), FastRational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a + c, b)
                } else {
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn times(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (FastRational::Small(a, b), FastRational::Small(c, d)) => {
                // cross-cancel so the products are already reduced
                let g1 = gcd_i128(*a as i128, *d as i128).max(1);
                let g2 = gcd_i128(*c as i128, *b as i128).max(1);
                let num = (*a as i128 / g1) * (*c as i128 / g2);
                let den = (*b as i128 / g2) * (*d as i128 / g1);
                Self::from_i128(num, den)
            }
            _ => Self::from_big(self.to_big() * rhs.to_big()),
        }
    }

    fn negated(&self) -> Self {
        match self {
            FastRational::Small(n, d) => FastRational::Small(-n, *d),
            FastRational::Big(q) => Self::from_big(-(**q).clone()),
        }
    }

    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FastRational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            FastRational::Big(q) => Self::from_big(q.recip()),
        }
    }

    fn embed_rational(&self, q: &Rational) -> Self {
        Self::from_rational(q)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.to_big())
    }

    fn denominator_lcm(&self) -> BigInt {
        match self {
            FastRational::Small(_, d) => BigInt::from(*d),
            FastRational::Big(q) => q.denom().clone(),
        }
    }

    fn is_one_value(&self) -> bool {
        matches!(self, FastRational::Small(1, 1))
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.minus(&a.times(b));
    }
}

impl fmt::Display for FastRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FastRational::Small(n, 1) => write!(f, "{n}"),
            FastRational::Small(n, d) => write!(f, "{n}/{d}"),
            FastRational::Big(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            FastRational::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Debug for FastRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&Rational> for FastRational {
    fn from(q: &Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<&FastRational> for Rational {
    fn from(q: &FastRational) -> Self {
        q.to_big()
    }
}

impl Default for FastRational {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn big(v: i64) -> FastRational {
        FastRational::from_rational(&(rat(v, 1) * rat(1 << 40, 1) * rat(1 << 40, 1)))
    }

    #[test]
    fn promotes_and_demotes() {
        let x = big(3);
        assert!(matches!(x, FastRational::Big(_)));
        let y = x.times(&big(1).inverse());
        assert_eq!(y, FastRational::from_int(3));
        let m = FastRational::from_int(i64::MAX).plus(&FastRational::one());
        assert_eq!(m.to_big(), rat(i64::MAX, 1) + rat(1, 1));
    }

    proptest! {
        #[test]
        fn agrees_with_big_rationals(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000, k in 0u32..62) {
            let scale = 1i64 << (k / 2);
            let x = FastRational::from_rational(&rat(a * scale, b));
            let y = FastRational::from_rational(&rat(c, d * scale));
            let (bx, by) = (rat(a * scale, b), rat(c, d * scale));
            prop_assert_eq!(x.plus(&y).to_big(), &bx + &by);
            prop_assert_eq!(x.minus(&y).to_big(), &bx - &by);
            prop_assert_eq!(x.times(&y).to_big(), &bx * &by);
            let mut z = x.clone();
            z.sub_mul_assign(&y, &x);
            prop_assert_eq!(z.to_big(), &bx - &by * &bx);
            if c != 0 {
                prop_assert_eq!(y.inverse().to_big(), by.recip());
            }
            prop_assert_eq!(FastRational::from_rational(&(&bx * &by)), x.times(&y));
        }
    }
}
