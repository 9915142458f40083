//! Plethystic substitution, computed in power sums where `p_k[g]` replaces
//! every `p_j` in `g` by `p_{jk}`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{p_product, Basis, Partition, SymFunc, SymPolyR};
use crate::error::{Error, Result};
use crate::exact::Rational;

type Terms = BTreeMap<Partition, Rational>;

/// Resolves the degree to which a plethysm `f[g]` is computed.
fn target_truncation(requested: Option<usize>, inner: Option<usize>) -> Result<Option<usize>> {
    match (requested, inner) {
        (None, Some(_)) => Err(Error::UntruncatedSeries),
        (Some(d), Some(dg)) if d > dg => Err(Error::IncompatibleTruncation(d, dg)),
        (d, _) => Ok(d),
    }
}

/// `f[g]`, returned in the basis of `g`.
///
/// When `g` is a truncated series the requested truncation must be given and
/// may not exceed that of `g`.
pub fn plethysm(f: &SymFunc, g: &SymFunc, truncation: Option<usize>) -> Result<SymFunc> {
    let d = target_truncation(truncation, g.truncation())?;
    let gp = g.to_basis(Basis::P);
    let has_constant = !gp.coeff(&Partition::empty()).is_zero();
    let fits = |w: usize| d.is_none_or(|d| w <= d);
    let adams = |k: usize| -> Terms {
        gp.terms().iter().filter(|(mu, _)| fits(mu.weight() * k)).map(|(mu, c)| (mu.scaled(k), c.clone())).collect()
    };
    let mut power_cache: HashMap<usize, Terms> = HashMap::new();
    let mut product_cache: HashMap<Partition, Terms> = HashMap::new();
    product_cache.insert(Partition::empty(), [(Partition::empty(), num_traits::One::one())].into_iter().collect());
    let mut out = Terms::new();
    for (lambda, c) in f.to_basis(Basis::P).terms() {
        // without a constant term in g, p_λ[g] starts in degree |λ|
        if !has_constant && !fits(lambda.weight()) {
            continue;
        }
        let prod = product_of_powers(lambda, &mut product_cache, &mut power_cache, &adams, d);
        for (mu, a) in prod {
            super::add_into(&mut out, mu.clone(), &(c * a));
        }
    }
    let mut result = SymFunc::from_terms(Basis::P, out).to_basis(g.basis());
    if let Some(d) = d {
        result = result.truncated(d);
    }
    Ok(result)
}

fn product_of_powers<'a>(
    lambda: &Partition,
    products: &'a mut HashMap<Partition, Terms>,
    powers: &mut HashMap<usize, Terms>,
    adams: &dyn Fn(usize) -> Terms,
    d: Option<usize>,
) -> &'a Terms {
    if !products.contains_key(lambda) {
        let (&last, init) = lambda.parts().split_last().expect("empty partition is cached");
        let prefix = Partition::from_unsorted(init.iter().copied());
        product_of_powers(&prefix, products, powers, adams, d);
        let pk = powers.entry(last).or_insert_with(|| adams(last)).clone();
        let value = p_product(&products[&prefix], &pk, d);
        products.insert(lambda.clone(), value);
    }
    &products[lambda]
}

/// `f[g]` for a symmetric polynomial `g` in a fixed number of variables.
pub fn plethysm_poly(f: &SymFunc, g: &SymPolyR, truncation: Option<usize>) -> Result<SymPolyR> {
    let d = target_truncation(truncation, g.truncation())?;
    let g = match d {
        Some(d) => g.clone().truncated(d),
        None => g.clone(),
    };
    let has_constant = !g.coeff(&Partition::empty()).is_zero();
    let mut powers: HashMap<usize, SymPolyR> = HashMap::new();
    let mut products: HashMap<Partition, SymPolyR> = HashMap::new();
    let mut one = SymPolyR::one(g.r());
    if let Some(d) = d {
        one = one.truncated(d);
    }
    products.insert(Partition::empty(), one.clone());
    let mut out = SymPolyR::zero(g.r());
    if let Some(d) = d {
        out = out.truncated(d);
    }
    for (lambda, c) in f.to_basis(Basis::P).terms() {
        if !has_constant && d.is_some_and(|d| lambda.weight() > d) {
            continue;
        }
        let mut prefix = Partition::empty();
        for (i, &k) in lambda.parts().iter().enumerate() {
            let next = Partition::from_unsorted(lambda.parts()[..=i].iter().copied());
            if !products.contains_key(&next) {
                let pk = powers.entry(k).or_insert_with(|| g.adams(k)).clone();
                let value = products[&prefix].try_mul(&pk)?;
                products.insert(next.clone(), value);
            }
            prefix = next;
        }
        out = out.try_add(&products[lambda].scale(c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::symfunc::part;

    fn h(parts: &[usize]) -> SymFunc {
        SymFunc::basis_element(Basis::H, part(parts))
    }

    #[test]
    fn small_plethysms() {
        // h_2[h_2] = s_4 + s_22
        let r = plethysm(&h(&[2]), &h(&[2]), None).unwrap().to_basis(Basis::S);
        let expected = &SymFunc::basis_element(Basis::S, part(&[4])) + &SymFunc::basis_element(Basis::S, part(&[2, 2]));
        assert_eq!(r, expected);
        // p_2[p_3] = p_6
        let p = |k| SymFunc::basis_element(Basis::P, part(&[k]));
        assert_eq!(plethysm(&p(2), &p(3), None).unwrap(), p(6));
    }

    #[test]
    fn truncation_rules() {
        let series = SymFunc::complete_series(4);
        assert!(matches!(plethysm(&h(&[2]), &series, None), Err(Error::UntruncatedSeries)));
        assert!(matches!(plethysm(&h(&[2]), &series, Some(5)), Err(Error::IncompatibleTruncation(5, 4))));
        let r = plethysm(&h(&[1]), &series, Some(3)).unwrap();
        assert_eq!(r.truncation(), Some(3));
        assert_eq!(r.max_degree(), Some(3));
    }

    #[test]
    fn polynomial_version_agrees() {
        let g = &h(&[1]) + &h(&[2]);
        for f in [h(&[2]), h(&[1, 1]), SymFunc::basis_element(Basis::E, part(&[3]))] {
            let full = plethysm(&f, &g, None).unwrap();
            for r in 1..=3 {
                let direct = SymPolyR::from_symfunc(&full, r);
                let poly = plethysm_poly(&f, &SymPolyR::from_symfunc(&g, r), None).unwrap();
                assert_eq!(direct, poly);
            }
        }
        assert_eq!(plethysm(&h(&[1]), &g, None).unwrap().coeff(&part(&[2])), int(1));
    }
}
