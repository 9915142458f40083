//! Symmetric polynomials in a fixed number `r` of variables `q_1, …, q_r`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{add_into, all_partitions, kostka, partitions_of, Basis, Notation, Partition, SymFunc};
use crate::error::{Error, Result};
use crate::exact::Rational;

type Terms = BTreeMap<Partition, Rational>;

/// A symmetric polynomial stored by its monomial-symmetric coefficients
/// (keys have at most `r` parts), optionally truncated in total degree.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPolyR {
    r: usize,
    coeffs: Terms,
    truncation: Option<usize>,
}

impl SymPolyR {
    pub fn zero(r: usize) -> Self {
        SymPolyR { r, coeffs: Terms::new(), truncation: None }
    }

    pub fn one(r: usize) -> Self {
        Self::from_m_terms(r, [(Partition::empty(), Rational::one())])
    }

    /// `Σ c_μ m_μ(q_1, …, q_r)`; terms with more than `r` parts vanish.
    pub fn from_m_terms<I: IntoIterator<Item = (Partition, Rational)>>(r: usize, terms: I) -> Self {
        let mut coeffs = Terms::new();
        for (l, c) in terms {
            if l.len() <= r {
                add_into(&mut coeffs, l, &c);
            }
        }
        SymPolyR { r, coeffs, truncation: None }
    }

    /// Evaluates a symmetric function in `r` variables.
    pub fn from_symfunc(f: &SymFunc, r: usize) -> Self {
        let m = f.to_basis(Basis::M);
        let mut p = Self::from_m_terms(r, m.terms().iter().map(|(l, c)| (l.clone(), c.clone())));
        p.truncation = f.truncation();
        p
    }

    /// `Σ c_μ s_μ(q_1, …, q_r)`.
    pub fn from_schur_terms(r: usize, terms: &BTreeMap<Partition, Rational>) -> Self {
        let f = SymFunc::from_terms(Basis::S, terms.iter().map(|(l, c)| (l.clone(), c.clone())));
        Self::from_symfunc(&f, r)
    }

    /// Builds from explicit monomials (exponent vectors of length `r`),
    /// rejecting coefficient maps that are not symmetric.
    pub fn from_monomials(r: usize, monomials: &BTreeMap<Vec<u32>, Rational>) -> Result<Self> {
        let mut classes: BTreeMap<Partition, (Rational, usize)> = BTreeMap::new();
        for (a, c) in monomials {
            if a.len() != r {
                return Err(Error::InvalidArgument(format!("exponent vector {a:?} does not have {r} entries")));
            }
            if c.is_zero() {
                continue;
            }
            let key = Partition::from_unsorted(a.iter().map(|&e| e as usize));
            let entry = classes.entry(key).or_insert_with(|| (c.clone(), 0));
            if &entry.0 != c {
                return Err(Error::NotSymmetric(a.clone()));
            }
            entry.1 += 1;
        }
        let mut coeffs = Terms::new();
        for (l, (c, count)) in classes {
            let padded: Vec<u32> = l.padded(r).unwrap().iter().map(|&p| p as u32).collect();
            if count != orbit_size(&padded) {
                return Err(Error::NotSymmetric(padded));
            }
            coeffs.insert(l, c);
        }
        Ok(SymPolyR { r, coeffs, truncation: None })
    }

    /// Full expansion into monomials.
    pub fn to_monomials(&self) -> BTreeMap<Vec<u32>, Rational> {
        let mut out = BTreeMap::new();
        for (l, c) in &self.coeffs {
            for a in orbit(l, self.r) {
                out.insert(a, c.clone());
            }
        }
        out
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Coefficients in the monomial symmetric basis.
    pub fn m_coeffs(&self) -> &BTreeMap<Partition, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, l: &Partition) -> Rational {
        self.coeffs.get(l).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn truncated(mut self, d: usize) -> Self {
        self.coeffs.retain(|l, _| l.weight() <= d);
        self.truncation = Some(self.truncation.map_or(d, |t| t.min(d)));
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs =
            if c.is_zero() { Terms::new() } else { self.coeffs.iter().map(|(l, a)| (l.clone(), a * c)).collect() };
        SymPolyR { r: self.r, coeffs, truncation: self.truncation }
    }

    fn check_compatible(&self, other: &Self) -> Result<Option<usize>> {
        if self.r != other.r {
            return Err(Error::InvalidArgument(format!("{} and {} variables", self.r, other.r)));
        }
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) if a != b => Err(Error::IncompatibleTruncation(a, b)),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(None),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let truncation = self.check_compatible(other)?;
        let mut coeffs = self.coeffs.clone();
        for (l, c) in &other.coeffs {
            add_into(&mut coeffs, l.clone(), c);
        }
        if let Some(d) = truncation {
            coeffs.retain(|l, _| l.weight() <= d);
        }
        Ok(SymPolyR { r: self.r, coeffs, truncation })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let truncation = self.check_compatible(other)?;
        let fits = |w: usize| truncation.is_none_or(|d| w <= d);
        let rhs: Vec<(Vec<u32>, &Rational)> =
            other.coeffs.iter().flat_map(|(l, c)| orbit(l, self.r).into_iter().map(move |a| (a, c))).collect();
        let mut coeffs = Terms::new();
        for (la, ca) in &self.coeffs {
            if !fits(la.weight()) {
                continue;
            }
            for a in orbit(la, self.r) {
                for (b, cb) in &rhs {
                    let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    // only the sorted representative of each orbit is recorded
                    if sum.windows(2).all(|w| w[0] >= w[1]) {
                        let l = Partition::from_unsorted(sum.iter().map(|&e| e as usize));
                        if fits(l.weight()) {
                            add_into(&mut coeffs, l, &(ca * *cb));
                        }
                    }
                }
            }
        }
        Ok(SymPolyR { r: self.r, coeffs, truncation })
    }

    /// `q_i ↦ q_i^k`, i.e. `p_k[self]`.
    pub fn adams(&self, k: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(l, _)| self.truncation.is_none_or(|d| l.weight() * k <= d))
            .map(|(l, c)| (l.scaled(k), c.clone()))
            .collect();
        SymPolyR { r: self.r, coeffs, truncation: self.truncation }
    }

    /// Sets `q_{r'+1}, …, q_r` to zero.
    pub fn restrict(&self, r: usize) -> Self {
        let coeffs = self.coeffs.iter().filter(|(l, _)| l.len() <= r).map(|(l, c)| (l.clone(), c.clone())).collect();
        SymPolyR { r, coeffs, truncation: self.truncation }
    }

    /// Value at `q_1 = … = q_r = 1`.
    pub fn eval_ones(&self) -> Rational {
        self.coeffs
            .iter()
            .map(|(l, c)| {
                let padded: Vec<u32> = l.padded(self.r).unwrap().iter().map(|&p| p as u32).collect();
                c * Rational::from_integer(BigInt::from(orbit_size(&padded)))
            })
            .sum()
    }

    /// The expansion `Σ c_μ s_μ(q)`.
    pub fn schur_expand(&self) -> Result<BTreeMap<Partition, Rational>> {
        schur_expand(self)
    }
}

impl fmt::Display for SymPolyR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render_terms(&self.coeffs, "m", Notation::Text))?;
        if let Some(d) = self.truncation {
            write!(f, " + O({d})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymPolyR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPolyR[r={}]({self})", self.r)
    }
}

/// Expands a symmetric polynomial in Schur polynomials by repeatedly
/// removing the leading monomial `c q^μ` through `c s_μ(q)`.
pub fn schur_expand(p: &SymPolyR) -> Result<BTreeMap<Partition, Rational>> {
    let mut work = p.coeffs.clone();
    let mut out = Terms::new();
    let mut by_weight: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    // within a weight, the map order puts the lexicographically largest key first
    while let Some((mu, c)) = work.iter().next().map(|(l, c)| (l.clone(), c.clone())) {
        let weight = mu.weight();
        let candidates = by_weight.entry(weight).or_insert_with(|| partitions_of(weight, p.r, weight));
        for nu in candidates.iter() {
            let k = kostka(&mu, nu.parts());
            if k != 0 {
                add_into(&mut work, nu.clone(), &(-&c * Rational::from_integer(BigInt::from(k))));
            }
        }
        if work.contains_key(&mu) {
            return Err(Error::Internal(format!("leading term {mu} was not eliminated")));
        }
        out.insert(mu, c);
    }
    Ok(out)
}

/// Number of distinct rearrangements of `a`.
fn orbit_size(a: &[u32]) -> usize {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &e in a {
        *counts.entry(e).or_default() += 1;
    }
    let mut n = BigInt::one();
    for i in 1..=a.len() {
        n *= BigInt::from(i);
    }
    for &m in counts.values() {
        for i in 1..=m {
            n /= BigInt::from(i);
        }
    }
    usize::try_from(n).expect("orbit size fits")
}

/// Distinct rearrangements of λ padded to `r` entries.
pub(crate) fn orbit(l: &Partition, r: usize) -> Vec<Vec<u32>> {
    let mut v: Vec<u32> = l.padded(r).expect("too many parts").iter().map(|&p| p as u32).collect();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All Schur polynomials `s_μ(q_1..q_r)` of a degree, as a check helper.
#[allow(dead_code)]
pub(crate) fn schur_polynomials(d: usize, r: usize) -> Vec<(Partition, SymPolyR)> {
    all_partitions(d)
        .into_iter()
        .filter(|l| l.len() <= r)
        .map(|l| {
            let s = SymPolyR::from_symfunc(&SymFunc::basis_element(Basis::S, l.clone()), r);
            (l, s)
        })
        .collect()
}
