//! Elements of the cyclotomic field ℚ(ζ_m), stored densely modulo Φ_m.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{fmt_rational, lcm, Field, Rational};

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    assert!(m >= 1);
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 = prod_{d | m} Phi_d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_divide(&num, &div);
        }
    }
    let poly = Arc::new(num);
    phi_cache().lock().unwrap().insert(m, poly.clone());
    poly
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// An element of ℚ(ζ_m) as a polynomial in ζ of degree below φ(m).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn zero(order: u32) -> Self {
        let len = euler_phi(order) as usize;
        CycloNum { order, coeffs: vec![Rational::zero(); len] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, q: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(v)))
    }

    /// ζ_m^k for any integer k.
    pub fn root_power(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        cyclo_reduce(&v, order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coordinates in the power basis 1, ζ, …, ζ^{φ(m)-1}.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
    }

    fn inverse_checked(&self) -> Option<Self> {
        if self.coeffs.iter().all(Zero::is_zero) {
            return None;
        }
        let k = self.coeffs.len();
        // Column j of the multiplication matrix is self * ζ^j.
        let mut cols = Vec::with_capacity(k);
        for j in 0..k {
            let zj = CycloNum::root_power(self.order, j as i64);
            cols.push((self * &zj).coeffs);
        }
        // Solve M x = e_0 by Gauss-Jordan on the augmented matrix.
        let mut a: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                let mut row: Vec<Rational> = (0..k).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for c in 0..k {
            let p = (c..k).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            let inv = a[c][c].recip();
            for v in a[c].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = a[c].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != c && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (dst, src) in row[c..=k].iter_mut().zip(&pivot_row[c..=k]) {
                        *dst -= src * &f;
                    }
                }
            }
        }
        Some(CycloNum { order: self.order, coeffs: a.into_iter().map(|r| r[k].clone()).collect() })
    }
}

/// Reduces a polynomial in ζ (constant term first) modulo Φ_m.
pub fn cyclo_reduce(poly: &[Rational], order: u32) -> CycloNum {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    let mut a = poly.to_vec();
    if a.len() < deg {
        a.resize(deg, Rational::zero());
    }
    for i in (deg..a.len()).rev() {
        if a[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut a[i]);
        // x^i = x^{i-deg} * x^deg and x^deg = -sum_{j<deg} phi_j x^j
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                a[i - deg + j] -= &c * Rational::from_integer(BigInt::from(pj));
            }
        }
    }
    a.truncate(deg);
    CycloNum { order, coeffs: a }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.check_order(rhs);
        CycloNum { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.check_order(rhs);
        CycloNum { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.check_order(rhs);
        let k = self.coeffs.len();
        if k == 1 {
            return CycloNum { order: self.order, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        let mut prod = vec![Rational::zero(); 2 * k - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        cyclo_reduce(&prod, self.order)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { order: self.order, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Field for CycloNum {
    fn is_zero_value(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn zero_like(&self) -> Self {
        CycloNum::zero(self.order)
    }
    fn one_like(&self) -> Self {
        CycloNum::one(self.order)
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
        self.inverse_checked().expect("inverse of zero")
    }
    fn embed_rational(&self, q: &Rational) -> Self {
        CycloNum::from_rational(self.order, q.clone())
    }
    fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
    fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| lcm(&acc, c.denom()))
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = fmt_rational(c);
            terms.push(match i {
                0 => cs,
                1 if c.is_one() => "ζ".to_string(),
                1 => format!("{cs}*ζ"),
                _ if c.is_one() => format!("ζ^{i}"),
                _ => format!("{cs}*ζ^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.order, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for m in 1..=30 {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, euler_phi(m) as usize);
        }
    }

    #[test]
    fn reduce_examples() {
        // ζ_4^2 = -1
        let z = cyclo_reduce(&[int(0), int(0), int(1)], 4);
        assert_eq!(z, CycloNum::from_int(4, -1));
        // ζ_6^2 = ζ_6 - 1
        let z = cyclo_reduce(&[int(0), int(0), int(1)], 6);
        assert_eq!(z.coeffs(), &[int(-1), int(1)]);
        // ζ_1^5 = 1
        let z = CycloNum::root_power(1, 5);
        assert_eq!(z, CycloNum::one(1));
    }

    #[test]
    fn roots_of_unity_have_order_m() {
        for m in 1..=12u32 {
            let z = CycloNum::root_power(m, 1);
            let mut acc = CycloNum::one(m);
            for k in 1..=m {
                acc = &acc * &z;
                assert_eq!(acc.is_one_value(), k == m, "ζ_{m}^{k}");
            }
            // sum of all m-th roots of unity vanishes for m > 1
            let s = (0..m as i64).fold(CycloNum::zero(m), |a, k| &a + &CycloNum::root_power(m, k));
            assert_eq!(s.is_zero_value(), m > 1);
        }
    }

    fn arb_triple() -> impl Strategy<Value = (CycloNum, CycloNum, CycloNum)> {
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]).prop_flat_map(|m| {
            let k = euler_phi(m) as usize;
            let elem = proptest::collection::vec((-6i64..6, 1i64..4), k)
                .prop_map(move |v| cyclo_reduce(&v.into_iter().map(|(a, b)| rat(a, b)).collect::<Vec<_>>(), m));
            (elem.clone(), elem.clone(), elem)
        })
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !a.is_zero_value() {
                prop_assert!((&a * &a.inverse()).is_one_value());
            }
        }
    }
}
