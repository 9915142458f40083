use crate::error::{Error, Result};
use crate::exact::{cyclo::cyclo_reduce, CycloNum, Field, Rational};
use crate::poly::{ExponentMatrix, Poly};
use crate::symfunc::Partition;

use super::GroupSpec;

/// Default limit on |W| for explicit enumeration.
pub const DEFAULT_ORDER_CAP: u64 = 10_000;

/// A monomial matrix with entry `ζ_m^{exps[j]}` at row `j`, column `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    m: u32,
    perm: Vec<usize>,
    exps: Vec<u32>,
}

impl GroupElement {
    pub fn identity(m: u32, n: usize) -> Self {
        GroupElement { m, perm: (0..n).collect(), exps: vec![0; n] }
    }

    /// Validates membership in `g`.
    pub fn new(g: &GroupSpec, perm: Vec<usize>, exps: Vec<u32>) -> Result<Self> {
        let n = g.n();
        let mut seen = vec![false; n];
        let valid_perm = perm.len() == n && perm.iter().all(|&k| k < n && !std::mem::replace(&mut seen[k], true));
        if !valid_perm || exps.len() != n || exps.iter().any(|&e| e >= g.m()) {
            return Err(Error::InvalidArgument(format!("({perm:?}, {exps:?}) is not a monomial matrix of {g}")));
        }
        if exps.iter().map(|&e| e as u64).sum::<u64>() % g.p() as u64 != 0 {
            return Err(Error::InvalidArgument(format!("exponent sum of {exps:?} is not divisible by {}", g.p())));
        }
        Ok(GroupElement { m: g.m(), perm, exps })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn root_order(&self) -> u32 {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0) && self.perm.iter().enumerate().all(|(i, &k)| i == k)
    }

    /// Exponent of the entry in row `j`, column `k`, if nonzero.
    pub fn entry(&self, j: usize, k: usize) -> Option<u32> {
        (self.perm[j] == k).then_some(self.exps[j])
    }

    /// The matrix product `self · other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.m, other.m);
        let perm = self.perm.iter().map(|&s| other.perm[s]).collect();
        let exps = self.exps.iter().zip(&self.perm).map(|(&e, &s)| (e + other.exps[s]) % self.m).collect();
        GroupElement { m: self.m, perm, exps }
    }

    pub fn inverse(&self) -> GroupElement {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            exps[self.perm[j]] = (self.m - self.exps[j]) % self.m;
        }
        GroupElement { m: self.m, perm, exps }
    }

    /// Cycle type of the underlying permutation.
    pub fn cycle_type(&self) -> Partition {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len > 0 {
                lengths.push(len);
            }
        }
        Partition::from_unsorted(lengths)
    }

    /// Image of `X^A` under `f(X) ↦ f(X·w)`: the monomial `X^B` and the
    /// exponent `k` of the scalar `ζ_m^k`.
    ///
    /// Column `j` of `B` is column `perm[j]` of `A`.
    pub fn act_monomial(&self, a: &[u8], r: usize, n: usize) -> (ExponentMatrix, u32) {
        let mut b = vec![0u8; a.len()];
        let mut phase: u64 = 0;
        for j in 0..n {
            let src = self.perm[j];
            let mut colsum: u64 = 0;
            for i in 0..r {
                let e = a[i * n + src];
                b[i * n + j] = e;
                colsum += e as u64;
            }
            phase += colsum * self.exps[j] as u64;
        }
        (b, (phase % self.m as u64) as u32)
    }

    /// `f(X) ↦ f(X·w)` over ℚ(ζ_m).
    pub fn act(&self, f: &Poly<CycloNum>) -> Result<Poly<CycloNum>> {
        let mut out = Poly::zero(f.r(), f.n());
        for (a, c) in f.terms() {
            if c.order() != self.m {
                return Err(Error::OrderMismatch { expected: self.m, found: c.order() });
            }
            let (b, k) = self.act_monomial(a, f.r(), f.n());
            out.add_term(b, c.times(&CycloNum::root_power(self.m, k as i64)));
        }
        Ok(out)
    }

    /// `f(X) ↦ f(X·w)` for rational `f`, when every scalar that occurs is ±1.
    pub fn act_rational(&self, f: &Poly<Rational>) -> Result<Poly<Rational>> {
        let mut out = Poly::zero(f.r(), f.n());
        for (a, c) in f.terms() {
            let (b, k) = self.act_monomial(a, f.r(), f.n());
            let c = match (k, 2 * k == self.m) {
                (0, _) => c.clone(),
                (_, true) => -c,
                _ => return Err(Error::OrderMismatch { expected: self.m, found: 1 }),
            };
            out.add_term(b, c);
        }
        Ok(out)
    }
}

/// Orbit sum `Σ_{w} w·X^A` over the given elements, if it is rational.
pub(crate) fn orbit_sum(elements: &[GroupElement], a: &[u8], r: usize, n: usize) -> Result<Poly<Rational>> {
    let m = elements[0].m;
    let mut phases: std::collections::BTreeMap<ExponentMatrix, Vec<i64>> = std::collections::BTreeMap::new();
    for w in elements {
        let (b, k) = w.act_monomial(a, r, n);
        phases.entry(b).or_insert_with(|| vec![0; m as usize])[k as usize] += 1;
    }
    let mut out = Poly::zero(r, n);
    for (b, counts) in phases {
        let poly: Vec<Rational> = counts.iter().map(|&c| Rational::from_integer(c.into())).collect();
        let value = cyclo_reduce(&poly, m);
        let q = value
            .to_rational()
            .ok_or_else(|| Error::Internal(format!("orbit sum coefficient {value} is not rational")))?;
        out.add_term(b, q);
    }
    Ok(out)
}

/// All elements of `g`, identity first.
pub fn enumerate_elements(g: &GroupSpec, cap: u64) -> Result<Vec<GroupElement>> {
    let order = g.order();
    if order > cap as u128 {
        return Err(Error::GroupTooLarge { order: order.min(u64::MAX as u128) as u64, cap });
    }
    let (m, p, n) = (g.m(), g.p(), g.n());
    let mut diagonals = Vec::new();
    for idx in 0..(m as u64).pow(n as u32) {
        let mut x = idx;
        let mut e = vec![0u32; n];
        for slot in e.iter_mut().rev() {
            *slot = (x % m as u64) as u32;
            x /= m as u64;
        }
        if e.iter().map(|&v| v as u64).sum::<u64>() % p as u64 == 0 {
            diagonals.push(e);
        }
    }
    let mut out = Vec::with_capacity(order as usize);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for d in &diagonals {
            out.push(GroupElement { m, perm: perm.clone(), exps: d.clone() });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    debug_assert_eq!(out.len() as u128, order);
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
