//! S_n characters of harmonic components.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::space::Component;
use crate::error::{Error, Result};
use crate::exact::{FastRational, Field, Rational, SparseVec};
use crate::groups::{GroupElement, GroupSpec};
use crate::symfunc::{all_partitions, sn_character, Partition};

/// Conjugacy class representatives of S_n and its character table.
pub(crate) struct ClassData {
    classes: Vec<(Partition, GroupElement)>,
    irreps: Vec<Partition>,
}

/// The permutation with cycles on consecutive blocks of sizes `mu`.
pub(crate) fn class_representative(mu: &Partition) -> GroupElement {
    let n = mu.weight();
    let mut perm = Vec::with_capacity(n);
    let mut start = 0;
    for &len in mu.parts() {
        for j in start..start + len {
            perm.push(if j + 1 < start + len { j + 1 } else { start });
        }
        start += len;
    }
    GroupElement::new(&GroupSpec::symmetric(n), perm, vec![0; n]).expect("valid permutation")
}

impl ClassData {
    pub fn new(n: usize) -> Self {
        let irreps = all_partitions(n);
        let classes = irreps.iter().map(|mu| (mu.clone(), class_representative(mu))).collect();
        ClassData { classes, irreps }
    }

    /// Trace of each class representative on the component.
    pub fn traces(&self, comp: &Component) -> Result<Vec<Rational>> {
        let space = &comp.space;
        self.classes
            .iter()
            .map(|(_, w)| {
                let mut trace = FastRational::zero();
                for (k, row) in comp.basis.rows().iter().enumerate() {
                    let mut image: SparseVec<FastRational> = row
                        .iter()
                        .map(|(j, c)| {
                            let (b, _) = w.act_monomial(&space.monomials[*j], space.r, space.n);
                            (space.index[&b], c.clone())
                        })
                        .collect();
                    image.sort_by_key(|e| e.0);
                    let coords = comp.basis.coordinates(&image).ok_or(Error::NotInSpan)?;
                    if let Some(c) = &coords[k] {
                        trace = trace.plus(c);
                    }
                }
                Ok(trace.to_big())
            })
            .collect()
    }

    /// Multiplicity of each irreducible representation (nonzero ones only).
    pub fn multiplicities(&self, comp: &Component) -> Result<BTreeMap<Partition, u64>> {
        let traces = self.traces(comp)?;
        let mut out = BTreeMap::new();
        for lambda in &self.irreps {
            let mut acc = Rational::zero();
            for ((mu, _), tr) in self.classes.iter().zip(&traces) {
                let chi = sn_character(lambda, mu)?;
                acc += tr * Rational::new(BigInt::from(chi), mu.z());
            }
            if !acc.is_integer() || acc.is_negative() {
                return Err(Error::Internal(format!(
                    "multiplicity of {lambda} at degree {:?} is {acc}",
                    comp.space.degree
                )));
            }
            let v = u64::try_from(acc.to_integer()).map_err(|_| Error::Internal("multiplicity overflow".into()))?;
            if v > 0 {
                out.insert(lambda.clone(), v);
            }
        }
        Ok(out)
    }
}
