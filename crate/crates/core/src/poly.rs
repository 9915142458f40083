//! Polynomials in an `r × n` matrix of variables `x_{ij}`: row `i` is the
//! i-th set of variables, column `j` the j-th coordinate.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{Field, Rational};

/// Exponents `a_{ij}` stored row-major; the shape lives in the owning [`Poly`].
pub type ExponentMatrix = Vec<u8>;

/// Row sums of an exponent matrix: its multidegree.
pub fn multidegree(a: &[u8], r: usize, n: usize) -> Vec<usize> {
    (0..r).map(|i| a[i * n..(i + 1) * n].iter().map(|&e| e as usize).sum()).collect()
}

/// Weak compositions of `d` into `n` parts, in decreasing lexicographic order.
pub fn compositions(d: usize, n: usize) -> Vec<Vec<u8>> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if slots == 1 {
            cur.push(rest as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in (0..=rest).rev() {
            cur.push(first as u8);
            go(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    assert!(d < 256, "exponent {d} does not fit");
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(d, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All exponent matrices with row sums `d`, in decreasing lexicographic
/// order of their row-major entries (the canonical column order).
pub fn monomial_basis(r: usize, n: usize, d: &[usize]) -> Vec<ExponentMatrix> {
    assert_eq!(d.len(), r);
    let mut out: Vec<ExponentMatrix> = vec![Vec::with_capacity(r * n)];
    for &di in d {
        let rows = compositions(di, n);
        let mut next = Vec::with_capacity(out.len() * rows.len());
        for prefix in &out {
            for row in &rows {
                let mut a = prefix.clone();
                a.extend_from_slice(row);
                next.push(a);
            }
        }
        out = next;
    }
    out
}

/// `Π_{ij} a_{ij}!`, the squared norm of `X^A` under the apolar pairing.
pub fn exponent_factorial(a: &[u8]) -> BigInt {
    let mut f = BigInt::one();
    for &e in a {
        for k in 2..=e as u32 {
            f *= k;
        }
    }
    f
}

/// `Π b_{ij}! / (b_{ij} - a_{ij})!`, or `None` when some `a_{ij} > b_{ij}`.
fn falling_factorial(b: &[u8], a: &[u8]) -> Option<BigInt> {
    let mut acc: u128 = 1;
    let mut big: Option<BigInt> = None;
    for (&bi, &ai) in b.iter().zip(a) {
        if ai > bi {
            return None;
        }
        for k in (bi - ai + 1)..=bi {
            match acc.checked_mul(k as u128) {
                Some(v) => acc = v,
                None => {
                    let cur = big.take().unwrap_or_else(BigInt::one) * BigInt::from(acc);
                    big = Some(cur);
                    acc = k as u128;
                }
            }
        }
    }
    Some(big.map_or_else(|| BigInt::from(acc), |b| b * BigInt::from(acc)))
}

/// Sparse polynomial in `r × n` variables with coefficients in `F`.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    r: usize,
    n: usize,
    terms: BTreeMap<ExponentMatrix, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(r: usize, n: usize) -> Self {
        Poly { r, n, terms: BTreeMap::new() }
    }

    pub fn monomial(r: usize, n: usize, a: ExponentMatrix, c: F) -> Self {
        let mut p = Self::zero(r, n);
        p.add_term(a, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (ExponentMatrix, F)>>(r: usize, n: usize, terms: I) -> Self {
        let mut p = Self::zero(r, n);
        for (a, c) in terms {
            p.add_term(a, c);
        }
        p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<ExponentMatrix, F> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<ExponentMatrix, F> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &[u8]) -> Option<&F> {
        self.terms.get(a)
    }

    /// Adds `c X^A`, dropping the entry if it cancels.
    pub fn add_term(&mut self, a: ExponentMatrix, c: F) {
        debug_assert_eq!(a.len(), self.r * self.n);
        if c.is_zero_value() {
            return;
        }
        match self.terms.entry(a) {
            Entry::Occupied(mut e) => {
                let v = e.get().plus(&c);
                if v.is_zero_value() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.negated());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero_value() {
            return Self::zero(self.r, self.n);
        }
        Poly { r: self.r, n: self.n, terms: self.terms.iter().map(|(a, v)| (a.clone(), v.times(c))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.r, self.n);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), c.times(d));
            }
        }
        out
    }

    /// `X^B · self`.
    pub fn mul_monomial(&self, b: &[u8]) -> Self {
        Poly {
            r: self.r,
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.iter().zip(b).map(|(x, y)| x + y).collect(), c.clone())).collect(),
        }
    }

    /// The set of multidegrees of the terms.
    pub fn multidegrees(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.terms.keys().map(|a| multidegree(a, self.r, self.n)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Total degree of a homogeneous polynomial (of its first term otherwise).
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|a| a.iter().map(|&e| e as usize).sum())
    }

    /// Terms of multidegree `d`.
    pub fn homogeneous_part(&self, d: &[usize]) -> Self {
        Poly {
            r: self.r,
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| multidegree(a, self.r, self.n) == d)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// `self(∂X) g`: the operator obtained by replacing each `x_{ij}` by `∂/∂x_{ij}`.
    pub fn apply_diff(&self, g: &Self) -> Self {
        assert_eq!((self.r, self.n), (g.r, g.n), "shape mismatch");
        let mut out = Self::zero(g.r, g.n);
        for (a, c) in &self.terms {
            for (b, d) in &g.terms {
                if let Some(f) = falling_factorial(b, a) {
                    let k = c.embed_rational(&Rational::from_integer(f));
                    let e: ExponentMatrix = b.iter().zip(a).map(|(x, y)| x - y).collect();
                    out.add_term(e, c.times(d).times(&k));
                }
            }
        }
        out
    }

    /// `⟨self, g⟩ = self(∂X) g` at `X = 0`, i.e. `Σ_A f_A g_A A!`.
    pub fn scalar_product(&self, g: &Self, zero: F) -> F {
        let mut acc = zero;
        for (a, c) in &self.terms {
            if let Some(d) = g.terms.get(a) {
                let k = c.embed_rational(&Rational::from_integer(exponent_factorial(a)));
                acc = acc.plus(&c.times(d).times(&k));
            }
        }
        acc
    }

    /// Applies a coefficient map (for example, a field embedding).
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut out = Poly::zero(self.r, self.n);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), f(c));
        }
        out
    }

    /// The same polynomial over ℚ, if all coefficients are rational.
    pub fn to_rational(&self) -> Option<Poly<Rational>> {
        let mut out = Poly::zero(self.r, self.n);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.to_rational()?);
        }
        Some(out)
    }

    /// Permutes the rows (sets of variables): row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut out = Self::zero(self.r, n);
        for (a, c) in &self.terms {
            let mut b = Vec::with_capacity(a.len());
            for &src in perm {
                b.extend_from_slice(&a[src * n..(src + 1) * n]);
            }
            out.add_term(b, c.clone());
        }
        out
    }
}

/// Variable name `x_{ij}` (one-based), e.g. `x12`, or `x10_3` once an index exceeds 9.
pub fn variable_name(i: usize, j: usize) -> String {
    if i < 9 && j < 9 {
        format!("x{}{}", i + 1, j + 1)
    } else {
        format!("x{}_{}", i + 1, j + 1)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(idx, &e)| {
                    let v = variable_name(idx / self.n, idx % self.n);
                    if e == 1 {
                        v
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            if k > 0 {
                f.write_str(" + ")?;
            }
            let coeff = c.to_string();
            match (mono.is_empty(), c.is_one_value()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "({coeff})*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use proptest::prelude::*;

    fn q(r: usize, n: usize, terms: &[(&[u8], i64)]) -> Poly<Rational> {
        Poly::from_terms(r, n, terms.iter().map(|(a, c)| (a.to_vec(), int(*c))))
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(1, 2, &[1]), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(monomial_basis(2, 2, &[1, 1]).len(), 4);
        assert_eq!(monomial_basis(2, 3, &[2, 0]).len(), 6);
        let b = monomial_basis(2, 3, &[2, 3]);
        assert_eq!(b.len(), 6 * 10);
        assert!(b.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn differentiation_examples() {
        let x11 = q(2, 2, &[(&[1, 0, 0, 0], 1)]);
        let x11sq = q(2, 2, &[(&[2, 0, 0, 0], 1)]);
        assert_eq!(x11.apply_diff(&x11sq), q(2, 2, &[(&[1, 0, 0, 0], 2)]));
        let sum = q(1, 2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let diff = q(1, 2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert!(sum.apply_diff(&diff).is_zero());
        let m = q(2, 2, &[(&[1, 0, 1, 0], 1)]);
        assert_eq!(m.apply_diff(&m), q(2, 2, &[(&[0, 0, 0, 0], 1)]));
    }

    #[test]
    fn scalar_products() {
        let x = q(1, 2, &[(&[2, 0], 1)]);
        assert_eq!(x.scalar_product(&x, int(0)), int(2));
        let a = q(1, 2, &[(&[1, 0], 1)]);
        let b = q(1, 2, &[(&[0, 1], 1)]);
        assert_eq!(a.scalar_product(&b, int(0)), int(0));
        assert_eq!(a.scalar_product(&a, int(0)), int(1));
    }

    proptest! {
        #[test]
        fn monomial_norm_is_product_of_factorials(a in proptest::collection::vec(0u8..5, 6)) {
            let m = Poly::monomial(2, 3, a.clone(), int(1));
            // iterated differentiation: apply the operator and read off the constant term
            let constant = m.apply_diff(&m);
            let expected: i64 = a.iter().map(|&e| (1..=e as i64).product::<i64>()).product();
            prop_assert_eq!(constant, Poly::monomial(2, 3, vec![0; 6], int(expected)));
            prop_assert_eq!(m.scalar_product(&m, int(0)), int(expected));
        }

        #[test]
        fn pairing_is_symmetric(
            f in proptest::collection::btree_map(proptest::collection::vec(0u8..3, 4), -3i64..4, 0..6),
            g in proptest::collection::btree_map(proptest::collection::vec(0u8..3, 4), -3i64..4, 0..6),
        ) {
            let f = Poly::from_terms(2, 2, f.into_iter().map(|(a, c)| (a, int(c))));
            let g = Poly::from_terms(2, 2, g.into_iter().map(|(a, c)| (a, int(c))));
            prop_assert_eq!(f.scalar_product(&g, int(0)), g.scalar_product(&f, int(0)));
        }
    }
}
