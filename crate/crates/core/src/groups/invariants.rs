//! Diagonal invariants: orbit sums of monomials, and polarized generating sets.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::element::{enumerate_elements, orbit_sum, GroupElement, DEFAULT_ORDER_CAP};
use super::GroupSpec;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::{compositions, monomial_basis, ExponentMatrix, Poly};

/// Which invariants serve as differential operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorPolicy {
    /// The polarized basic invariants (S_n, G(m,1,n), dihedral groups).
    Polarized,
    /// Orbit sums spanning every graded piece of the invariant ring.
    Reynolds,
}

impl GeneratorPolicy {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorPolicy::Polarized => "polarized",
            GeneratorPolicy::Reynolds => "reynolds",
        }
    }

    /// Polarized where available, orbit sums otherwise.
    pub fn default_for(g: &GroupSpec) -> Self {
        if polarization_supported(g) {
            GeneratorPolicy::Polarized
        } else {
            GeneratorPolicy::Reynolds
        }
    }
}

impl fmt::Display for GeneratorPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "polarized" => Ok(GeneratorPolicy::Polarized),
            "reynolds" => Ok(GeneratorPolicy::Reynolds),
            _ => Err(Error::UnsupportedPolicy(format!("unknown generator policy '{s}'"))),
        }
    }
}

pub(crate) fn polarization_supported(g: &GroupSpec) -> bool {
    g.is_full_monomial() || g.is_dihedral()
}

/// Σ_j Π_i x_{ij}^{d_i}.
fn polarized_power_sum(r: usize, n: usize, d: &[usize]) -> Poly<Rational> {
    let mut f = Poly::zero(r, n);
    for j in 0..n {
        let mut a = vec![0u8; r * n];
        for (i, &di) in d.iter().enumerate() {
            a[i * n + j] = di as u8;
        }
        f.add_term(a, Rational::one());
    }
    f
}

/// Polarized generators of multidegree exactly `d`.
pub fn polarized_at(g: &GroupSpec, r: usize, d: &[usize]) -> Result<Vec<Poly<Rational>>> {
    if !polarization_supported(g) {
        return Err(Error::UnsupportedPolicy(format!(
            "no polarized generating set is known for {g}; use the reynolds policy"
        )));
    }
    let (m, n) = (g.m() as usize, g.n());
    let tdeg: usize = d.iter().sum();
    let mut out = Vec::new();
    if tdeg == 0 {
        return Ok(out);
    }
    if g.is_full_monomial() {
        // power sums p_{km}, k = 1..n, polarized
        if tdeg.is_multiple_of(m) && tdeg / m <= n {
            out.push(polarized_power_sum(r, n, d));
        }
        return Ok(out);
    }
    // dihedral: coefficients of (Σ x_i t_i)^m + (Σ y_i t_i)^m and of (Σ x_i t_i)(Σ y_i t_i)
    if tdeg == m {
        out.push(polarized_power_sum(r, n, d));
    }
    if tdeg == 2 {
        let support: Vec<usize> = (0..r).filter(|&i| d[i] > 0).collect();
        let mut f = Poly::zero(r, 2);
        let mono = |i: usize, k: usize| {
            let mut a = vec![0u8; r * 2];
            a[i * 2] += 1;
            a[k * 2 + 1] += 1;
            a
        };
        match support.as_slice() {
            [i] => f.add_term(mono(*i, *i), Rational::one()),
            [i, k] => {
                f.add_term(mono(*i, *k), Rational::one());
                f.add_term(mono(*k, *i), Rational::one());
            }
            _ => unreachable!(),
        }
        out.push(f);
    }
    Ok(out)
}

/// The whole polarized generating set for `r` sets of variables.
pub fn polarized_generators(g: &GroupSpec, r: usize) -> Result<Vec<Poly<Rational>>> {
    let top = if g.is_full_monomial() { g.m() as usize * g.n() } else { (g.m() as usize).max(2) };
    let mut out = Vec::new();
    for t in 1..=top {
        for d in compositions(t, r) {
            let d: Vec<usize> = d.iter().map(|&x| x as usize).collect();
            out.extend(polarized_at(g, r, &d)?);
        }
    }
    Ok(out)
}

/// Lexicographically smallest column rearrangement of `a`.
fn column_canonical(a: &[u8], r: usize, n: usize) -> ExponentMatrix {
    let mut cols: Vec<Vec<u8>> = (0..n).map(|j| (0..r).map(|i| a[i * n + j]).collect()).collect();
    // rows are compared first in row-major order, so the smallest arrangement
    // sorts columns by their entries read top to bottom
    cols.sort();
    let mut out = vec![0u8; r * n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..r {
            out[i * n + j] = col[i];
        }
    }
    out
}

/// Nonzero orbit sums `Σ_w w·X^A` spanning the invariants of multidegree `d`,
/// one per orbit of monomials (represented by its smallest member).
pub fn reynolds_invariants(elements: &[GroupElement], r: usize, n: usize, d: &[usize]) -> Result<Vec<Poly<Rational>>> {
    let mut out = Vec::new();
    for a in monomial_basis(r, n, d) {
        if column_canonical(&a, r, n) != a {
            continue;
        }
        let f = orbit_sum(elements, &a, r, n)?;
        if !f.is_zero() {
            out.push(f);
        }
    }
    Ok(out)
}

/// Spanning sets of the invariants of every total degree `1..=max_tdeg`.
pub fn reynolds_generators(g: &GroupSpec, r: usize, max_tdeg: usize) -> Result<Vec<Poly<Rational>>> {
    let elements = enumerate_elements(g, DEFAULT_ORDER_CAP)?;
    let mut out = Vec::new();
    for t in 1..=max_tdeg {
        for d in compositions(t, r) {
            let d: Vec<usize> = d.iter().map(|&x| x as usize).collect();
            out.extend(reynolds_invariants(&elements, r, g.n(), &d)?);
        }
    }
    Ok(out)
}

/// Invariants of multidegree exactly `d` under the chosen policy.
pub fn invariant_generators(
    g: &GroupSpec,
    policy: GeneratorPolicy,
    elements: Option<&[GroupElement]>,
    r: usize,
    d: &[usize],
) -> Result<Vec<Poly<Rational>>> {
    match policy {
        GeneratorPolicy::Polarized => polarized_at(g, r, d),
        GeneratorPolicy::Reynolds => match elements {
            Some(els) => reynolds_invariants(els, r, g.n(), d),
            None => reynolds_invariants(&enumerate_elements(g, DEFAULT_ORDER_CAP)?, r, g.n(), d),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, CycloNum};

    fn poly(r: usize, n: usize, terms: &[&[u8]]) -> Poly<Rational> {
        Poly::from_terms(r, n, terms.iter().map(|a| (a.to_vec(), int(1))))
    }

    fn normalize(f: &Poly<Rational>) -> Poly<Rational> {
        let c = f.terms().values().next().unwrap().clone();
        f.scale(&c.recip())
    }

    #[test]
    fn reynolds_examples() {
        let s2 = GroupSpec::symmetric(2);
        let g1 = reynolds_generators(&s2, 1, 1).unwrap();
        assert_eq!(g1.iter().map(normalize).collect::<Vec<_>>(), vec![poly(1, 2, &[&[1, 0], &[0, 1]])]);
        let g2: Vec<_> = reynolds_generators(&s2, 2, 1).unwrap().iter().map(normalize).collect();
        assert_eq!(g2.len(), 2);
        assert!(g2.contains(&poly(2, 2, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])));
        assert!(g2.contains(&poly(2, 2, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])));
        assert!(reynolds_generators(&GroupSpec::cyclic(3), 2, 2).unwrap().is_empty());
        assert_eq!(reynolds_generators(&GroupSpec::cyclic(3), 2, 3).unwrap().len(), 4);
    }

    #[test]
    fn polarized_examples() {
        let s2: Vec<_> = polarized_generators(&GroupSpec::symmetric(2), 2).unwrap();
        assert_eq!(s2.len(), 5);
        assert!(s2.contains(&poly(2, 2, &[&[1, 0, 1, 0], &[0, 1, 0, 1]])));
        let i3 = polarized_generators(&GroupSpec::dihedral(3), 1).unwrap();
        assert_eq!(i3, vec![poly(1, 2, &[&[1, 1]]), poly(1, 2, &[&[3, 0], &[0, 3]])]);
        assert_eq!(polarized_generators(&GroupSpec::cyclic(4), 1).unwrap(), vec![poly(1, 1, &[&[4]])]);
        assert!(matches!(polarized_generators(&GroupSpec::new(4, 2, 3).unwrap(), 1), Err(Error::UnsupportedPolicy(_))));
    }

    #[test]
    fn generators_are_invariant() {
        let groups = [
            GroupSpec::symmetric(3),
            GroupSpec::dihedral(4),
            GroupSpec::new(3, 1, 2).unwrap(),
            GroupSpec::new(4, 2, 2).unwrap(),
            GroupSpec::cyclic(3),
        ];
        for g in groups {
            let els = enumerate_elements(&g, 1000).unwrap();
            let mut gens = reynolds_generators(&g, 2, 4).unwrap();
            if polarization_supported(&g) {
                gens.extend(polarized_generators(&g, 2).unwrap());
            }
            for f in &gens {
                let fc = f.map_coeffs(|c| CycloNum::from_rational(g.m(), c.clone()));
                for w in &els {
                    assert_eq!(w.act(&fc).unwrap(), fc, "{g}: {f}");
                }
            }
        }
    }
}
