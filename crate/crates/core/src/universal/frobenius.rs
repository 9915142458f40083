use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::harmonics::GradedSeries;
use crate::symfunc::{all_partitions, kostka, schur_at_ones, schur_dimension_poly, Basis, Partition, SymFunc};
use crate::univariate::UPoly;

/// For each irreducible S_λ of S_n, the universal expansion
/// `Σ_μ b_{λ,μ} s_μ(q)` of its graded multiplicity in the harmonics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalFrobenius {
    n: usize,
    table: BTreeMap<Partition, BTreeMap<Partition, u64>>,
}

impl UniversalFrobenius {
    pub fn from_table(n: usize, table: BTreeMap<Partition, BTreeMap<Partition, u64>>) -> Self {
        UniversalFrobenius { n, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &BTreeMap<Partition, BTreeMap<Partition, u64>> {
        &self.table
    }

    /// Row λ (empty if S_λ never occurs).
    pub fn row(&self, lambda: &Partition) -> BTreeMap<Partition, u64> {
        self.table.get(lambda).cloned().unwrap_or_default()
    }

    /// Row λ as a symmetric function in the Schur basis.
    pub fn row_symfunc(&self, lambda: &Partition) -> SymFunc {
        SymFunc::from_terms(
            Basis::S,
            self.row(lambda).into_iter().map(|(mu, c)| (mu, Rational::from_integer(BigInt::from(c)))),
        )
    }

    /// The coefficient of each `m_ν(w)`, written in the h-basis of the
    /// grading variables: `Σ_λ K_{λ,ν} · row λ`.
    pub fn monomial_form(&self) -> BTreeMap<Partition, SymFunc> {
        all_partitions(self.n)
            .into_iter()
            .map(|nu| {
                let mut acc = SymFunc::zero(Basis::S);
                for lambda in self.table.keys() {
                    let k = kostka(lambda, nu.parts());
                    if k > 0 {
                        acc = acc
                            .try_add(&self.row_symfunc(lambda).scale(&Rational::from_integer(k.into())))
                            .expect("untruncated");
                    }
                }
                (nu, acc.to_basis(Basis::H))
            })
            .collect()
    }

    /// Entries `(ν, μ, a)` of the monomial form with `a < 0`.
    pub fn monomial_form_negatives(&self) -> Vec<(Partition, Partition, Rational)> {
        let mut out = Vec::new();
        for (nu, f) in self.monomial_form() {
            for (mu, c) in f.terms() {
                if *c < Rational::zero() {
                    out.push((nu.clone(), mu.clone(), c.clone()));
                }
            }
        }
        out
    }

    /// Multiplicity of S_λ in the harmonics with `r` sets of variables, as a
    /// polynomial in `r`.
    pub fn multiplicity_polynomials(&self) -> BTreeMap<Partition, UPoly> {
        self.table
            .iter()
            .map(|(lambda, row)| {
                let p = row.iter().fold(UPoly::zero(), |acc, (mu, &c)| {
                    &acc + &schur_dimension_poly(mu).scale(&Rational::from_integer(BigInt::from(c)))
                });
                (lambda.clone(), p)
            })
            .collect()
    }

    /// Multiplicities with one set of variables `q_1 = t`.
    pub fn one_variable(&self) -> BTreeMap<Partition, UPoly> {
        self.table
            .iter()
            .map(|(lambda, row)| {
                let top = row.keys().map(Partition::weight).max().unwrap_or(0);
                let mut coeffs = vec![Rational::zero(); top + 1];
                for (mu, &c) in row {
                    if mu.len() <= 1 {
                        coeffs[mu.weight()] += Rational::from_integer(BigInt::from(c));
                    }
                }
                (lambda.clone(), UPoly::from_coeffs(coeffs))
            })
            .collect()
    }
}

/// Schur-expands every row of a complete S_n Frobenius series in `r ≥ n`
/// sets of variables.
pub fn universal_frobenius(series: &GradedSeries) -> Result<UniversalFrobenius> {
    let g = series.group();
    if !g.is_symmetric() {
        return Err(Error::UnsupportedFamily(format!("Frobenius tables need a symmetric group, got {g}")));
    }
    if !series.is_complete() || series.r() < g.n() {
        return Err(Error::InvalidArgument(format!(
            "a complete series in at least {} sets of variables is required",
            g.n()
        )));
    }
    let mut table = BTreeMap::new();
    for (lambda, poly) in series.frobenius_sympolys()? {
        let mut row = BTreeMap::new();
        for (mu, c) in poly.schur_expand()? {
            if !c.is_integer() || c < Rational::zero() {
                return Err(Error::Internal(format!("coefficient {c} of s{mu} in row {lambda}")));
            }
            let v = u64::try_from(c.to_integer()).map_err(|_| Error::Internal("coefficient overflow".into()))?;
            row.insert(mu, v);
        }
        table.insert(lambda, row);
    }
    let trivial = Partition::row(g.n());
    let expected: BTreeMap<Partition, u64> = [(Partition::empty(), 1)].into_iter().collect();
    if table.get(&trivial) != Some(&expected) {
        return Err(Error::Internal(format!("trivial row is {:?}", table.get(&trivial))));
    }
    Ok(UniversalFrobenius { n: g.n(), table })
}

/// Multiplicity of the sign representation with `r` sets of variables.
pub fn catalan_check(table: &UniversalFrobenius, r: usize) -> BigInt {
    let sign = Partition::column(table.n);
    let v: Rational = table
        .row(&sign)
        .iter()
        .map(|(mu, &c)| schur_at_ones(mu, r) * Rational::from_integer(BigInt::from(c)))
        .fold(Rational::zero(), |a, b| a + b);
    v.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;
    use crate::harmonics::{frobenius_series, EngineConfig};
    use crate::symfunc::{part, qbinomial};

    fn s3() -> UniversalFrobenius {
        let s = frobenius_series(&GroupSpec::symmetric(3), 3, &EngineConfig::default()).unwrap();
        universal_frobenius(&s).unwrap()
    }

    #[test]
    fn s3_rows() {
        let t = s3();
        let row =
            |v: &[(&[usize], u64)]| -> BTreeMap<Partition, u64> { v.iter().map(|(p, c)| (part(p), *c)).collect() };
        assert_eq!(t.row(&part(&[2, 1])), row(&[(&[2], 1), (&[1], 1)]));
        assert_eq!(t.row(&part(&[1, 1, 1])), row(&[(&[3], 1), (&[1, 1], 1)]));
        assert_eq!(catalan_check(&t, 2), BigInt::from(5));
        assert_eq!(catalan_check(&t, 3), BigInt::from(13));
    }

    #[test]
    fn s3_one_variable_monomial_form_is_q_multinomial() {
        let t = s3();
        let one = t.one_variable();
        for nu in all_partitions(3) {
            let mut acc = UPoly::zero();
            for (lambda, p) in &one {
                acc = &acc + &p.scale(&Rational::from_integer(kostka(lambda, nu.parts()).into()));
            }
            assert_eq!(acc, qbinomial(3, &nu).unwrap());
        }
        assert!(t.monomial_form_negatives().is_empty());
    }

    #[test]
    fn rejects_other_groups() {
        let s = crate::harmonics::hilbert_series(&GroupSpec::dihedral(3), 2, &EngineConfig::default()).unwrap();
        assert!(universal_frobenius(&s).is_err());
    }
}
