//! Low degree approximation of the S_n Frobenius series by the quotient of
//! the diagonal coinvariant ring series `h_n[w·H(q)]` by the invariant ring
//! series `h_n[H(q)]`, where `H = Σ_k h_k(q)`.

use std::collections::BTreeMap;

use num_traits::One;

use super::frobenius::UniversalFrobenius;
use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::symfunc::{all_partitions, plethysm, Basis, Partition, SymFunc};
use crate::univariate::UPoly;

/// Series of the polynomial ring in `r` sets of `n` variables (by
/// irreducible S_n component) and of its S_n invariants, truncated at
/// q-degree `D`. Both are universal in the grading variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantRingSeries {
    n: usize,
    truncation: usize,
    /// `s_λ[H]`, the coefficient of `S_λ(w)`.
    schur_form: BTreeMap<Partition, SymFunc>,
    /// `h_λ[H]`, the coefficient of `m_λ(w)`.
    monomial_form: BTreeMap<Partition, SymFunc>,
    /// `h_n[H]`.
    invariants: SymFunc,
}

impl CoinvariantRingSeries {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn schur_form(&self) -> &BTreeMap<Partition, SymFunc> {
        &self.schur_form
    }

    pub fn monomial_form(&self) -> &BTreeMap<Partition, SymFunc> {
        &self.monomial_form
    }

    pub fn invariants(&self) -> &SymFunc {
        &self.invariants
    }
}

/// `h_n[w·H]` in both Cauchy forms and `h_n[H]`, truncated at degree `d`.
pub fn coinvariant_ring_series(n: usize, d: usize) -> Result<CoinvariantRingSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let big_h = SymFunc::complete_series(d);
    let subst = |f: SymFunc| plethysm(&f, &big_h, Some(d));
    let mut schur_form = BTreeMap::new();
    let mut monomial_form = BTreeMap::new();
    for lambda in all_partitions(n) {
        schur_form.insert(lambda.clone(), subst(SymFunc::basis_element(Basis::S, lambda.clone()))?.to_basis(Basis::S));
        monomial_form.insert(lambda.clone(), subst(SymFunc::basis_element(Basis::H, lambda))?);
    }
    let invariants = subst(SymFunc::basis_element(Basis::H, Partition::row(n)))?;
    Ok(CoinvariantRingSeries { n, truncation: d, schur_form, monomial_form, invariants })
}

/// `1/f` for a truncated series with constant term 1.
fn invert(f: &SymFunc) -> Result<SymFunc> {
    let d = f.truncation().ok_or(Error::UntruncatedSeries)?;
    if f.coeff(&Partition::empty()) != Rational::one() {
        return Err(Error::InvalidArgument("series inversion needs constant term 1".into()));
    }
    let one = SymFunc::one(f.basis()).truncated(d);
    let tail = f.try_sub(&one)?.scale(&-Rational::one());
    // 1/(1 − u) = Σ u^k, and u^k vanishes below degree k
    let mut acc = one.clone();
    let mut power = one;
    for _ in 0..d {
        power = power.try_mul(&tail)?;
        acc = acc.try_add(&power)?;
    }
    Ok(acc)
}

/// The quotient `h_n[w·H] / h_n[H]` truncated at q-degree `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegreeApprox {
    n: usize,
    truncation: usize,
    schur_form: BTreeMap<Partition, SymFunc>,
    monomial_form: BTreeMap<Partition, SymFunc>,
}

impl LowDegreeApprox {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `s_λ[H]/h_n[H]` in the Schur basis, the coefficient of `S_λ(w)`.
    pub fn schur_form(&self) -> &BTreeMap<Partition, SymFunc> {
        &self.schur_form
    }

    /// `h_λ[H]/h_n[H]` in the h-basis, the coefficient of `m_λ(w)`.
    pub fn monomial_form(&self) -> &BTreeMap<Partition, SymFunc> {
        &self.monomial_form
    }

    /// The Hilbert series approximation `H^n / h_n[H]`.
    pub fn hilbert(&self) -> &SymFunc {
        &self.monomial_form[&Partition::column(self.n)]
    }

    /// Every `(λ, μ, exact − approximate)` that is nonzero, over all degrees.
    /// Above the truncation this lists the terms the approximation misses.
    pub fn difference(&self, exact: &UniversalFrobenius) -> Result<Vec<(Partition, Partition, Rational)>> {
        if exact.n() != self.n {
            return Err(Error::InvalidArgument(format!(
                "table is for n = {}, approximation for n = {}",
                exact.n(),
                self.n
            )));
        }
        let mut out = Vec::new();
        for (lambda, approx) in &self.schur_form {
            let diff = exact.row_symfunc(lambda).try_sub(&approx.clone().untruncated())?;
            out.extend(diff.terms().iter().map(|(mu, c)| (lambda.clone(), mu.clone(), c.clone())));
        }
        Ok(out)
    }

    /// Entries of [`Self::difference`] in q-degree at most `max_degree`.
    pub fn discrepancies(
        &self,
        exact: &UniversalFrobenius,
        max_degree: usize,
    ) -> Result<Vec<(Partition, Partition, Rational)>> {
        let mut v = self.difference(exact)?;
        v.retain(|(_, mu, _)| mu.weight() <= max_degree);
        Ok(v)
    }
}

pub fn low_degree_approx(n: usize, d: usize) -> Result<LowDegreeApprox> {
    if d == 0 {
        return Err(Error::InvalidArgument("truncation degree must be positive".into()));
    }
    let ring = coinvariant_ring_series(n, d)?;
    let inv = invert(&ring.invariants)?;
    let divide = |f: &SymFunc, basis: Basis| -> Result<SymFunc> { Ok(f.try_mul(&inv)?.to_basis(basis)) };
    let schur_form =
        ring.schur_form.iter().map(|(l, f)| Ok((l.clone(), divide(f, Basis::S)?))).collect::<Result<_>>()?;
    let monomial_form =
        ring.monomial_form.iter().map(|(l, f)| Ok((l.clone(), divide(f, Basis::H)?))).collect::<Result<_>>()?;
    Ok(LowDegreeApprox { n, truncation: d, schur_form, monomial_form })
}

/// Coefficient of `h_μ`, `|μ| ≤ d`, in `H^n / h_n[H]` as a polynomial in `n`,
/// valid for `n ≥ d`. Interpolated from `n = d, …, 2d` and checked at `2d + 1`.
pub fn hilbert_coefficient_polynomials(d: usize) -> Result<BTreeMap<Partition, UPoly>> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let big_h = SymFunc::complete_series(d);
    let series_at = |n: usize| -> Result<SymFunc> {
        let mut pow = SymFunc::one(Basis::H).truncated(d);
        for _ in 0..n {
            pow = pow.try_mul(&big_h)?;
        }
        let den = plethysm(&SymFunc::basis_element(Basis::H, Partition::row(n)), &big_h, Some(d))?;
        Ok(pow.try_mul(&invert(&den)?)?.to_basis(Basis::H))
    };
    let samples: Vec<(usize, SymFunc)> = (d..=2 * d + 1).map(|n| Ok((n, series_at(n)?))).collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for k in 0..=d {
        for mu in all_partitions(k) {
            let points: Vec<(Rational, Rational)> =
                samples[..=d].iter().map(|(n, f)| (int(*n as i64), f.coeff(&mu))).collect();
            let p = UPoly::interpolate(&points);
            let (n_check, f_check) = &samples[d + 1];
            if p.eval_int(*n_check as i64) != f_check.coeff(&mu) {
                return Err(Error::Internal(format!("coefficient of h{mu} is not polynomial in n")));
            }
            if !p.is_zero() {
                out.insert(mu, p);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{part, principal_specialization, qbinomial, SymPolyR};
    use num_traits::Zero;

    #[test]
    fn invariant_ring_dimensions() {
        let ring = coinvariant_ring_series(2, 2).unwrap();
        let poly = SymPolyR::from_symfunc(&ring.invariants().clone().untruncated(), 2);
        let mut by_degree = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (a, c) in poly.to_monomials() {
            by_degree[a.iter().sum::<u32>() as usize] += c;
        }
        assert_eq!(by_degree, [int(1), int(2), int(6)]);
    }

    #[test]
    fn two_variable_ring_in_one_set() {
        // coefficients h_2 and e_2 of (1, q, q^2, …): pairs i ≤ j, resp. i < j, with i + j = k
        let ring = coinvariant_ring_series(2, 3).unwrap();
        let sym = principal_specialization(&ring.schur_form()[&part(&[2])], 3);
        let alt = principal_specialization(&ring.schur_form()[&part(&[1, 1])], 3);
        assert_eq!(sym, UPoly::from_ints(&[1, 1, 2, 2]));
        assert_eq!(alt, UPoly::from_ints(&[0, 1, 1, 2]));
    }

    #[test]
    fn single_set_quotient_is_exact() {
        let approx = low_degree_approx(3, 4).unwrap();
        for (nu, f) in approx.monomial_form() {
            assert_eq!(principal_specialization(f, 4), qbinomial(3, nu).unwrap(), "{nu}");
        }
    }

    #[test]
    fn hilbert_coefficients_in_n() {
        let polys = hilbert_coefficient_polynomials(3).unwrap();
        let n_minus = |k: i64| UPoly::from_ints(&[-k, 1]);
        assert_eq!(polys[&part(&[1])], n_minus(1));
        assert_eq!(polys[&part(&[2])], n_minus(2));
        assert_eq!(polys[&part(&[1, 1])], UPoly::binomial(-1, 2));
        assert_eq!(polys[&part(&[2, 1])], &n_minus(1) * &n_minus(3));
        assert_eq!(polys[&part(&[3])], n_minus(2));
        assert_eq!(polys[&part(&[1, 1, 1])], UPoly::binomial(-1, 3));
        assert_eq!(polys.len(), 7);
    }

    #[test]
    fn zero_truncation_is_rejected() {
        assert!(low_degree_approx(3, 0).is_err());
    }
}
