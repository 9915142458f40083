use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::engine::distinct_orderings;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::groups::{GeneratorPolicy, GroupSpec};
use crate::symfunc::{Partition, SymPolyR};
use crate::univariate::UPoly;

/// Dimensions of the harmonic components by multidegree, and for S_n the
/// multiplicity of each irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    group: GroupSpec,
    r: usize,
    policy: GeneratorPolicy,
    max_tdeg: usize,
    complete: bool,
    dims: BTreeMap<Vec<usize>, u64>,
    frobenius: Option<BTreeMap<Vec<usize>, BTreeMap<Partition, u64>>>,
}

impl GradedSeries {
    /// Builds a series from the dimensions at sorted multidegrees; the other
    /// orderings are filled in by symmetry.
    pub fn from_sorted_dims(
        group: GroupSpec,
        r: usize,
        policy: GeneratorPolicy,
        max_tdeg: usize,
        complete: bool,
        sorted: impl IntoIterator<Item = (Vec<usize>, u64)>,
    ) -> Self {
        let mut dims = BTreeMap::new();
        for (d, v) in sorted {
            if v == 0 {
                continue;
            }
            for (e, _) in distinct_orderings(&d) {
                dims.insert(e, v);
            }
        }
        GradedSeries { group, r, policy, max_tdeg, complete, dims, frobenius: None }
    }

    /// Attaches multiplicities given at sorted multidegrees.
    pub fn set_frobenius(&mut self, sorted: impl IntoIterator<Item = (Vec<usize>, BTreeMap<Partition, u64>)>) {
        let mut map = BTreeMap::new();
        for (d, m) in sorted {
            if m.is_empty() {
                continue;
            }
            for (e, _) in distinct_orderings(&d) {
                map.insert(e, m.clone());
            }
        }
        self.frobenius = Some(map);
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn policy(&self) -> GeneratorPolicy {
        self.policy
    }

    /// Highest total degree computed.
    pub fn max_tdeg(&self) -> usize {
        self.max_tdeg
    }

    /// True when every nonzero component was computed (up to the degree bound,
    /// with vanishing checked one degree above it).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Nonzero dimensions by multidegree.
    pub fn dims(&self) -> &BTreeMap<Vec<usize>, u64> {
        &self.dims
    }

    pub fn dim(&self, d: &[usize]) -> u64 {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.dims.values().sum()
    }

    /// Entries ordered by total degree, then decreasing multidegree.
    pub fn entries(&self) -> Vec<(&Vec<usize>, u64)> {
        let mut v: Vec<(&Vec<usize>, u64)> = self.dims.iter().map(|(d, &x)| (d, x)).collect();
        v.sort_by(|a, b| {
            let ta: usize = a.0.iter().sum();
            let tb: usize = b.0.iter().sum();
            ta.cmp(&tb).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// Dimensions summed over each total degree.
    pub fn by_total_degree(&self) -> Vec<u64> {
        let mut out = vec![0; self.max_tdeg + 1];
        for (d, v) in &self.dims {
            out[d.iter().sum::<usize>()] += v;
        }
        out
    }

    /// The series in one variable `t` (all sets identified).
    pub fn univariate(&self) -> UPoly {
        UPoly::from_coeffs(self.by_total_degree().iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
    }

    /// Restriction to the first `r` sets of variables.
    pub fn restrict(&self, r: usize) -> Result<GradedSeries> {
        if r == 0 || r > self.r {
            return Err(Error::InvalidArgument(format!("cannot restrict {} sets to {r}", self.r)));
        }
        let keep = |d: &Vec<usize>| d[r..].iter().all(|&x| x == 0);
        let dims = self.dims.iter().filter(|(d, _)| keep(d)).map(|(d, &v)| (d[..r].to_vec(), v)).collect();
        let frobenius = self
            .frobenius
            .as_ref()
            .map(|f| f.iter().filter(|(d, _)| keep(d)).map(|(d, m)| (d[..r].to_vec(), m.clone())).collect());
        Ok(GradedSeries { r, dims, frobenius, ..self.clone() })
    }

    /// The Hilbert series as a symmetric polynomial in `q_1, …, q_r`.
    pub fn to_sympoly(&self) -> Result<SymPolyR> {
        let m: BTreeMap<Vec<u32>, Rational> = self
            .dims
            .iter()
            .map(|(d, &v)| (d.iter().map(|&x| x as u32).collect(), Rational::from_integer(BigInt::from(v))))
            .collect();
        SymPolyR::from_monomials(self.r, &m)
    }

    pub fn has_frobenius(&self) -> bool {
        self.frobenius.is_some()
    }

    /// Irreducible multiplicities by multidegree (nonzero entries only).
    pub fn frobenius(&self) -> Option<&BTreeMap<Vec<usize>, BTreeMap<Partition, u64>>> {
        self.frobenius.as_ref()
    }

    pub fn multiplicity(&self, d: &[usize], lambda: &Partition) -> u64 {
        self.frobenius.as_ref().and_then(|f| f.get(d)).and_then(|m| m.get(lambda)).copied().unwrap_or(0)
    }

    /// For each irreducible λ, the symmetric polynomial `Σ_d b_λ(d) q^d`.
    pub fn frobenius_sympolys(&self) -> Result<BTreeMap<Partition, SymPolyR>> {
        let f = self.frobenius.as_ref().ok_or_else(|| Error::InvalidArgument("series has no Frobenius data".into()))?;
        let mut per: BTreeMap<Partition, BTreeMap<Vec<u32>, Rational>> = BTreeMap::new();
        for (d, m) in f {
            for (l, &v) in m {
                per.entry(l.clone())
                    .or_default()
                    .insert(d.iter().map(|&x| x as u32).collect(), Rational::from_integer(BigInt::from(v)));
            }
        }
        per.into_iter().map(|(l, m)| Ok((l, SymPolyR::from_monomials(self.r, &m)?))).collect()
    }
}
