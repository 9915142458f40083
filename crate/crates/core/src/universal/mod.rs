//! The r-independent structure of harmonic Hilbert and Frobenius series:
//! Schur expansions in the grading variables, h-expansions, dimension
//! polynomials in r, closed forms for small families and the low degree
//! approximation through the diagonal coinvariant ring.

mod closed_form;
mod frobenius;
mod low_degree;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use closed_form::{closed_form, cyclic_sum, dihedral_h_form, dihedral_schur_form, full_monomial_rank_two};
pub use frobenius::{catalan_check, universal_frobenius, UniversalFrobenius};
pub use low_degree::{
    coinvariant_ring_series, hilbert_coefficient_polynomials, low_degree_approx, CoinvariantRingSeries, LowDegreeApprox,
};

use crate::error::{Error, Result};
use crate::exact::{rational_to_i64, Rational};
use crate::groups::GroupSpec;
use crate::harmonics::{hilbert_series, EngineConfig, GradedSeries};
use crate::symfunc::{
    principal_specialization, schur_at_ones, schur_dimension_poly, Basis, Partition, SymFunc, SymPolyR,
};
use crate::univariate::UPoly;

/// A Hilbert series written as `Σ c_μ s_μ(q)` with coefficients independent
/// of the number of sets of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalExpansion {
    group: GroupSpec,
    coefficients: BTreeMap<Partition, i64>,
    certified_rank: usize,
}

impl UniversalExpansion {
    /// Wraps known coefficients (for instance a closed form) without any
    /// certification; `certified_rank` is 0.
    pub fn from_coefficients(group: GroupSpec, coefficients: BTreeMap<Partition, i64>) -> Self {
        let coefficients = coefficients.into_iter().filter(|(_, c)| *c != 0).collect();
        UniversalExpansion { group, coefficients, certified_rank: 0 }
    }

    /// Converts a symmetric function with integer coefficients.
    pub fn from_symfunc(group: GroupSpec, f: &SymFunc) -> Result<Self> {
        Ok(Self::from_coefficients(group, integer_terms(&f.to_basis(Basis::S))?))
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn coefficients(&self) -> &BTreeMap<Partition, i64> {
        &self.coefficients
    }

    pub fn coeff(&self, mu: &Partition) -> i64 {
        self.coefficients.get(mu).copied().unwrap_or(0)
    }

    /// Number of sets of variables at which the expansion was extracted.
    pub fn certified_rank(&self) -> usize {
        self.certified_rank
    }

    pub fn is_schur_positive(&self) -> bool {
        self.coefficients.values().all(|&c| c > 0)
    }

    /// `Σ c_μ s_μ` as a symmetric function in the Schur basis.
    pub fn to_symfunc(&self) -> SymFunc {
        SymFunc::from_terms(
            Basis::S,
            self.coefficients.iter().map(|(mu, &c)| (mu.clone(), Rational::from_integer(c.into()))),
        )
    }

    /// The Hilbert series in `r` variables `q_1, …, q_r`.
    pub fn evaluate(&self, r: usize) -> SymPolyR {
        SymPolyR::from_symfunc(&self.to_symfunc(), r)
    }

    /// The series with one set of variables.
    pub fn one_variable(&self) -> UPoly {
        let top = self.coefficients.keys().map(Partition::weight).max().unwrap_or(0);
        principal_specialization(&self.to_symfunc(), top)
    }
}

fn integer_terms(f: &SymFunc) -> Result<BTreeMap<Partition, i64>> {
    f.terms()
        .iter()
        .map(|(mu, c)| {
            rational_to_i64(c)
                .map(|v| (mu.clone(), v))
                .ok_or_else(|| Error::Internal(format!("coefficient {c} of {mu} is not an integer")))
        })
        .collect()
}

/// Reads off the universal expansion from a complete series in `r ≥ n` sets
/// of variables. When `lower` is given it must be the independently computed
/// series in `r − 1` sets, and the restriction of `series` must reproduce it.
pub fn extract_universal(series: &GradedSeries, lower: Option<&GradedSeries>) -> Result<UniversalExpansion> {
    let g = series.group();
    let r = series.r();
    if !series.is_complete() {
        return Err(Error::InvalidArgument("universal extraction needs a complete series".into()));
    }
    if r < g.n() {
        return Err(Error::InvalidArgument(format!(
            "extraction for {g} needs at least {} sets of variables, got {r}",
            g.n()
        )));
    }
    if let Some(lower) = lower {
        certify_restriction(series, lower)?;
    }
    let raw = series.to_sympoly()?.schur_expand()?;
    let f = SymFunc::from_terms(Basis::S, raw);
    let u = UniversalExpansion { certified_rank: r, ..UniversalExpansion::from_symfunc(g, &f)? };
    if let Some(mu) = u.coefficients.keys().find(|mu| mu.len() > g.n()) {
        return Err(Error::Internal(format!("{mu} has more than {} parts", g.n())));
    }
    if g.is_full_monomial() {
        if let Some((mu, c)) = u.coefficients.iter().find(|(_, c)| **c < 0) {
            return Err(Error::Internal(format!("negative coefficient {c} of s{mu} for {g}")));
        }
    }
    if u.one_variable() != g.poincare_polynomial() {
        return Err(Error::Internal(format!(
            "one-variable specialization of {g} differs from its Poincaré polynomial"
        )));
    }
    Ok(u)
}

/// Checks that dropping the last set of variables from `series` gives `lower`.
pub fn certify_restriction(series: &GradedSeries, lower: &GradedSeries) -> Result<()> {
    if lower.r() + 1 != series.r() || lower.group() != series.group() {
        return Err(Error::InvalidArgument(
            "certification needs the same group with one set of variables fewer".into(),
        ));
    }
    let restricted = series.restrict(lower.r())?;
    let mut keys: Vec<&Vec<usize>> = restricted.dims().keys().chain(lower.dims().keys()).collect();
    keys.sort();
    keys.dedup();
    for d in keys {
        let (a, b) = (restricted.dim(d), lower.dim(d));
        if a != b {
            return Err(Error::UniversalityViolated { degree: d.clone(), restricted: a, direct: b });
        }
    }
    Ok(())
}

/// Computes the series in `n` and `n − 1` sets of variables, certifies the
/// restriction and extracts the universal expansion.
pub fn universal_expansion(g: &GroupSpec, config: &EngineConfig) -> Result<UniversalExpansion> {
    let n = g.n();
    let series = hilbert_series(g, n, config)?;
    let lower = if n > 1 { Some(hilbert_series(g, n - 1, config)?) } else { None };
    extract_universal(&series, lower.as_ref())
}

/// The coefficients `a_μ` with `Σ a_μ h_μ = Σ c_μ s_μ`; they may be negative.
pub fn h_expansion(u: &UniversalExpansion) -> BTreeMap<Partition, i64> {
    integer_terms(&u.to_symfunc().to_basis(Basis::H)).expect("Schur functions have integral h-expansions")
}

/// `Σ c_μ s_μ(1^r)` as a polynomial in `r`.
pub fn dimension_polynomial(u: &UniversalExpansion) -> UPoly {
    u.coefficients
        .iter()
        .fold(UPoly::zero(), |acc, (mu, &c)| &acc + &schur_dimension_poly(mu).scale(&Rational::from_integer(c.into())))
}

/// Total dimension of the harmonics in `r` sets of variables.
pub fn dimension(u: &UniversalExpansion, r: usize) -> BigInt {
    let v: Rational = u
        .coefficients
        .iter()
        .map(|(mu, &c)| schur_at_ones(mu, r) * Rational::from_integer(c.into()))
        .fold(Rational::zero(), |a, b| a + b);
    debug_assert!(v.is_integer() && !v.is_negative());
    v.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::part;

    fn s3() -> UniversalExpansion {
        universal_expansion(&GroupSpec::symmetric(3), &EngineConfig::default()).unwrap()
    }

    #[test]
    fn s2_and_s3_expansions() {
        let u = universal_expansion(&GroupSpec::symmetric(2), &EngineConfig::default()).unwrap();
        let want: BTreeMap<Partition, i64> = [(part(&[]), 1), (part(&[1]), 1)].into_iter().collect();
        assert_eq!(u.coefficients(), &want);
        assert_eq!(u.certified_rank(), 2);

        let u = s3();
        let want: BTreeMap<Partition, i64> =
            [(part(&[]), 1), (part(&[1]), 2), (part(&[2]), 2), (part(&[1, 1]), 1), (part(&[3]), 1)]
                .into_iter()
                .collect();
        assert_eq!(u.coefficients(), &want);
    }

    #[test]
    fn s3_h_expansion_and_dimensions() {
        let u = s3();
        let h = h_expansion(&u);
        let want: BTreeMap<Partition, i64> =
            [(part(&[]), 1), (part(&[1]), 2), (part(&[2]), 1), (part(&[1, 1]), 1), (part(&[3]), 1)]
                .into_iter()
                .collect();
        assert_eq!(h, want);
        assert_eq!(dimension(&u, 2), BigInt::from(16));
        assert_eq!(dimension(&u, 3), BigInt::from(32));
        // (1+r)^2 + C(r+1,2) + C(r+2,3)
        let one_plus_r = UPoly::binomial(1, 1);
        let expected = &(&(&one_plus_r * &one_plus_r) + &UPoly::binomial(1, 2)) + &UPoly::binomial(2, 3);
        assert_eq!(dimension_polynomial(&u), expected);
    }

    #[test]
    fn evaluation_matches_direct_series() {
        let u = s3();
        for r in 1..=3 {
            let direct = hilbert_series(&GroupSpec::symmetric(3), r, &EngineConfig::default()).unwrap();
            assert_eq!(u.evaluate(r), direct.to_sympoly().unwrap());
        }
    }

    #[test]
    fn certification_detects_mismatch() {
        let g = GroupSpec::symmetric(3);
        let s3r3 = hilbert_series(&g, 3, &EngineConfig::default()).unwrap();
        let s3r1 = hilbert_series(&g, 1, &EngineConfig::default()).unwrap();
        assert!(certify_restriction(&s3r3, &s3r1).is_err());
        let other = hilbert_series(&GroupSpec::dihedral(3), 2, &EngineConfig::default()).unwrap();
        let fake = GradedSeries::from_sorted_dims(g, 2, other.policy(), 3, true, [(vec![0, 0], 1), (vec![1, 0], 1)]);
        assert!(matches!(certify_restriction(&s3r3, &fake), Err(Error::UniversalityViolated { .. })));
    }

    #[test]
    fn incomplete_series_is_rejected() {
        let cfg = EngineConfig { max_tdeg: Some(1), ..EngineConfig::default() };
        let s = hilbert_series(&GroupSpec::symmetric(2), 2, &cfg).unwrap();
        assert!(s.is_complete());
        let s = hilbert_series(&GroupSpec::symmetric(3), 3, &cfg).unwrap();
        assert!(extract_universal(&s, None).is_err());
    }
}
