//! One component at a time, as the kernel of all generator operators stacked.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::space::MonomialSpace;
use super::HarmonicComponent;
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, Echelon, ExactMatrix, Rational, SparseVec};
use crate::groups::{enumerate_elements, invariant_generators, GeneratorPolicy, GroupSpec, DEFAULT_ORDER_CAP};
use crate::poly::{compositions, Poly};

/// Multidegrees `e` with `0 ≠ e ≤ d` componentwise.
fn lower_degrees(d: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &di in d {
        out = out.into_iter().flat_map(|p: Vec<usize>| (0..=di).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out.retain(|e| e.iter().any(|&x| x > 0));
    out
}

/// The harmonic polynomials of multidegree `d`: the common kernel of
/// `f(∂X)` over every generator `f` whose multidegree fits below `d`.
pub fn harmonic_component(
    g: &GroupSpec,
    r: usize,
    d: &[usize],
    policy: GeneratorPolicy,
    max_entries: usize,
) -> Result<HarmonicComponent> {
    if d.len() != r {
        return Err(Error::InvalidArgument(format!("multidegree {d:?} does not have {r} entries")));
    }
    let n = g.n();
    let elements = match policy {
        GeneratorPolicy::Reynolds => Some(enumerate_elements(g, DEFAULT_ORDER_CAP)?),
        GeneratorPolicy::Polarized => None,
    };
    let space = MonomialSpace::new(r, n, d);
    let mut gens: Vec<(Poly<Rational>, Arc<MonomialSpace>)> = Vec::new();
    let mut spaces: HashMap<Vec<usize>, Arc<MonomialSpace>> = HashMap::new();
    for e in lower_degrees(d) {
        let fs = invariant_generators(g, policy, elements.as_deref(), r, &e)?;
        if fs.is_empty() {
            continue;
        }
        let target: Vec<usize> = d.iter().zip(&e).map(|(a, b)| a - b).collect();
        let ts = spaces.entry(target.clone()).or_insert_with(|| MonomialSpace::new(r, n, &target)).clone();
        gens.extend(fs.into_iter().map(|f| (f, ts.clone())));
    }
    let rows: usize = gens.iter().map(|(_, s)| s.len()).sum();
    let entries = rows.saturating_mul(space.len());
    if entries > max_entries {
        return Err(Error::ResourceCap { degree: d.to_vec(), entries, cap: max_entries });
    }
    let mut matrix = ExactMatrix::zeros(rows, space.len(), Rational::zero());
    for (col, a) in space.monomials.iter().enumerate() {
        let xa = Poly::monomial(r, n, a.clone(), num_traits::One::one());
        let mut offset = 0;
        for (f, ts) in &gens {
            for (b, c) in f.apply_diff(&xa).terms() {
                matrix.set(offset + ts.index[b], col, c.clone());
            }
            offset += ts.len();
        }
    }
    let mut ech = Echelon::new();
    for v in kernel_basis(&matrix) {
        let sv: SparseVec<Rational> = v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        ech.insert(&sv);
    }
    Ok(HarmonicComponent::from_rows(&space, ech.into_rref()))
}

/// Every multidegree of total degree `t` in `r` coordinates.
pub fn all_degrees(t: usize, r: usize) -> Vec<Vec<usize>> {
    compositions(t, r).into_iter().map(|c| c.into_iter().map(usize::from).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_degree_enumeration() {
        assert_eq!(lower_degrees(&[1, 1]), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(lower_degrees(&[2]).len(), 2);
    }
}
