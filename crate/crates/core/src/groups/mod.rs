//! The complex reflection groups G(m,p,n) of monomial matrices.

mod element;
mod invariants;

use std::fmt;
use std::str::FromStr;

pub use element::{enumerate_elements, GroupElement, DEFAULT_ORDER_CAP};
pub use invariants::{
    invariant_generators, polarized_at, polarized_generators, reynolds_generators, reynolds_invariants, GeneratorPolicy,
};

use crate::error::{Error, Result};
use crate::univariate::UPoly;

/// G(m,p,n): n×n monomial matrices with m-th roots of unity as entries whose
/// product is an (m/p)-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    m: u32,
    p: u32,
    n: usize,
}

impl GroupSpec {
    pub fn new(m: u32, p: u32, n: usize) -> Result<Self> {
        let invalid = |reason: &str| Err(Error::InvalidGroup { m, p, n, reason: reason.to_string() });
        if m == 0 || p == 0 || n == 0 {
            return invalid("parameters must be positive");
        }
        if !m.is_multiple_of(p) {
            return invalid("p must divide m");
        }
        if n > 64 {
            return invalid("rank too large");
        }
        Ok(GroupSpec { m, p, n })
    }

    /// S_n = G(1,1,n), permuting all n coordinates.
    pub fn symmetric(n: usize) -> Self {
        GroupSpec { m: 1, p: 1, n }
    }

    /// C_m = G(m,1,1).
    pub fn cyclic(m: u32) -> Self {
        GroupSpec { m, p: 1, n: 1 }
    }

    /// I_2(m) = G(m,m,2).
    pub fn dihedral(m: u32) -> Self {
        GroupSpec { m, p: m, n: 2 }
    }

    /// B_n = G(2,1,n).
    pub fn hyperoctahedral(n: usize) -> Self {
        GroupSpec { m: 2, p: 1, n }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_symmetric(&self) -> bool {
        self.m == 1
    }

    /// G(m,1,n), including S_n and C_m.
    pub fn is_full_monomial(&self) -> bool {
        self.p == 1
    }

    /// G(m,m,2) with m ≥ 2.
    pub fn is_dihedral(&self) -> bool {
        self.n == 2 && self.p == self.m && self.m >= 2
    }

    /// |W| = mⁿ n! / p.
    pub fn order(&self) -> u128 {
        let mut o: u128 = 1;
        for i in 1..=self.n as u128 {
            o = o.saturating_mul(i);
        }
        for _ in 0..self.n {
            o = o.saturating_mul(self.m as u128);
        }
        o / self.p as u128
    }

    /// The degrees of the basic invariants, ascending:
    /// {m, 2m, …, (n−1)m, nm/p}.
    pub fn degrees(&self) -> Vec<usize> {
        let m = self.m as usize;
        let mut d: Vec<usize> = (1..self.n).map(|k| k * m).collect();
        d.push(self.n * m / self.p as usize);
        d.sort_unstable();
        d
    }

    /// Σ (d_i − 1): the top total degree of a harmonic polynomial.
    pub fn degree_bound(&self) -> usize {
        self.degrees().iter().map(|d| d - 1).sum()
    }

    /// Π_i (t^{d_i} − 1)/(t − 1).
    pub fn poincare_polynomial(&self) -> UPoly {
        self.degrees().iter().fold(UPoly::one(), |acc, &d| &acc * &UPoly::q_integer(d))
    }

    /// Canonical short name: `S4`, `B3`, `C6`, `I2(5)` or `G(m,p,n)`.
    pub fn name(&self) -> String {
        let (m, p, n) = (self.m, self.p, self.n);
        if m == 1 {
            format!("S{n}")
        } else if n == 1 && p == 1 {
            format!("C{m}")
        } else if m == 2 && p == 1 {
            format!("B{n}")
        } else if n == 2 && p == m {
            format!("I2({m})")
        } else {
            format!("G({m},{p},{n})")
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::GroupParse(s.to_string());
        let num = |x: &str| x.parse::<u32>().map_err(|_| bad());
        let upper = t.to_ascii_uppercase();
        if let Some(inner) = upper.strip_prefix("G(").and_then(|x| x.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            return GroupSpec::new(num(parts[0])?, num(parts[1])?, num(parts[2])? as usize);
        }
        if let Some(inner) = upper.strip_prefix("I2(").and_then(|x| x.strip_suffix(')')) {
            return GroupSpec::new(num(inner)?, num(inner)?, 2);
        }
        let (head, rest) = upper.split_at(upper.char_indices().nth(1).map_or(upper.len(), |(i, _)| i));
        let k = num(rest)?;
        match head {
            "S" => GroupSpec::new(1, 1, k as usize),
            "B" => GroupSpec::new(2, 1, k as usize),
            "C" => GroupSpec::new(k, 1, 1),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("S4".parse::<GroupSpec>().unwrap(), GroupSpec::symmetric(4));
        assert_eq!("B3".parse::<GroupSpec>().unwrap(), GroupSpec::new(2, 1, 3).unwrap());
        assert_eq!("C6".parse::<GroupSpec>().unwrap(), GroupSpec::cyclic(6));
        assert_eq!("I2(5)".parse::<GroupSpec>().unwrap(), GroupSpec::dihedral(5));
        assert_eq!("G(4, 2, 3)".parse::<GroupSpec>().unwrap(), GroupSpec::new(4, 2, 3).unwrap());
        for bad in ["", "X3", "S", "G(3,2,2)", "G(1,2)", "I2(x)", "S0"] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad}");
        }
        for g in ["S4", "B3", "C6", "I2(5)", "G(4,2,3)"] {
            assert_eq!(g.parse::<GroupSpec>().unwrap().name(), g);
        }
    }

    #[test]
    fn degrees_and_orders() {
        assert_eq!(GroupSpec::symmetric(3).degrees(), vec![1, 2, 3]);
        assert_eq!(GroupSpec::hyperoctahedral(2).degrees(), vec![2, 4]);
        assert_eq!(GroupSpec::dihedral(5).degrees(), vec![2, 5]);
        assert_eq!(GroupSpec::symmetric(4).degree_bound(), 6);
        assert_eq!(GroupSpec::cyclic(5).degree_bound(), 4);
        assert_eq!(GroupSpec::new(3, 1, 2).unwrap().degree_bound(), 7);
        for g in [GroupSpec::symmetric(4), GroupSpec::dihedral(6), GroupSpec::new(4, 2, 3).unwrap()] {
            let prod: usize = g.degrees().iter().product();
            assert_eq!(prod as u128, g.order());
        }
    }

    #[test]
    fn poincare_polynomials() {
        assert_eq!(GroupSpec::symmetric(3).poincare_polynomial(), UPoly::from_ints(&[1, 2, 2, 1]));
        assert_eq!(GroupSpec::cyclic(4).poincare_polynomial(), UPoly::from_ints(&[1, 1, 1, 1]));
        let g = GroupSpec::new(3, 1, 2).unwrap();
        assert_eq!(g.poincare_polynomial().eval_int(1), crate::exact::int(18));
    }
}
