//! Closed forms of the universal Hilbert series for the cyclic groups, the
//! dihedral groups and G(m,1,2).

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::groups::GroupSpec;
use crate::symfunc::{Basis, Partition, SymFunc};

fn h(k: usize) -> Partition {
    Partition::row(k)
}

/// `Σ_{j=0}^{top} h_j`.
pub fn cyclic_sum(top: usize) -> SymFunc {
    SymFunc::from_terms(Basis::H, (0..=top).map(|j| (h(j), Rational::from_integer(1.into()))))
}

/// `1 + s_{11} + s_m + 2 Σ_{k=1}^{m−1} s_k` for the dihedral group of order 2m.
pub fn dihedral_schur_form(m: usize) -> SymFunc {
    let mut terms = vec![(Partition::empty(), int(1)), (Partition::column(2), int(1)), (h(m), int(1))];
    terms.extend((1..m).map(|k| (h(k), int(2))));
    SymFunc::from_terms(Basis::S, terms)
}

/// `1 + 2h_1 + h_{11} + h_2 + 2 Σ_{j=3}^{m−1} h_j + h_m`, the h-form of the
/// dihedral series; it agrees with [`dihedral_schur_form`] for `m ≥ 3`.
pub fn dihedral_h_form(m: usize) -> SymFunc {
    let mut terms = vec![(Partition::empty(), int(1)), (h(1), int(2)), (Partition::column(2), int(1)), (h(2), int(1))];
    terms.extend((3..m).map(|j| (h(j), int(2))));
    terms.push((h(m), int(1)));
    SymFunc::from_terms(Basis::H, terms)
}

/// `(Σ_{k<m} h_k)^2 + Σ_{k<m} (k+1) h_{m+k} + Σ_{k=1}^{m−1} (m−k) h_{2m−1+k}`.
pub fn full_monomial_rank_two(m: usize) -> SymFunc {
    let s = cyclic_sum(m - 1);
    let mut out = s.try_mul(&s).expect("untruncated").to_basis(Basis::H);
    let mut extra: Vec<(Partition, Rational)> = (0..m).map(|k| (h(m + k), int(k as i64 + 1))).collect();
    extra.extend((1..m).map(|k| (h(2 * m - 1 + k), int((m - k) as i64))));
    out = out.try_add(&SymFunc::from_terms(Basis::H, extra)).expect("untruncated");
    out
}

/// The universal Hilbert series in the h-basis for `C_m = G(m,1,1)`, the
/// dihedral groups `G(m,m,2)` and `G(m,1,2)`.
///
/// The cyclic sum stops at `h_{m−1}`, the top degree of the harmonics. For the
/// dihedral group of order 4 the h-form is obtained from the Schur form, since
/// the general h-form counts `h_2` twice there.
pub fn closed_form(g: &GroupSpec) -> Result<SymFunc> {
    let m = g.m() as usize;
    if g.n() == 1 && g.p() == 1 {
        Ok(cyclic_sum(m - 1))
    } else if g.is_dihedral() {
        if m >= 3 {
            Ok(dihedral_h_form(m))
        } else {
            Ok(dihedral_schur_form(m).to_basis(Basis::H))
        }
    } else if g.n() == 2 && g.p() == 1 {
        Ok(full_monomial_rank_two(m))
    } else {
        Err(Error::UnsupportedFamily(g.name()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{part, principal_specialization};

    #[test]
    fn one_variable_is_poincare() {
        let groups = [
            GroupSpec::cyclic(1),
            GroupSpec::cyclic(4),
            GroupSpec::dihedral(2),
            GroupSpec::dihedral(5),
            GroupSpec::new(1, 1, 2).unwrap(),
            GroupSpec::new(3, 1, 2).unwrap(),
        ];
        for g in groups {
            let f = closed_form(&g).unwrap();
            assert_eq!(principal_specialization(&f, 20), g.poincare_polynomial(), "{g}");
        }
    }

    #[test]
    fn dihedral_forms_agree() {
        for m in 3..=10 {
            assert_eq!(dihedral_schur_form(m).to_basis(Basis::H), dihedral_h_form(m), "m = {m}");
        }
        assert_ne!(dihedral_schur_form(2).to_basis(Basis::H), dihedral_h_form(2));
    }

    #[test]
    fn small_cases() {
        assert_eq!(closed_form(&GroupSpec::new(1, 1, 2).unwrap()).unwrap(), cyclic_sum(1));
        let i25 = closed_form(&GroupSpec::dihedral(5)).unwrap();
        let want = SymFunc::from_terms(
            Basis::H,
            [
                (part(&[]), int(1)),
                (part(&[1]), int(2)),
                (part(&[1, 1]), int(1)),
                (part(&[2]), int(1)),
                (part(&[3]), int(2)),
                (part(&[4]), int(2)),
                (part(&[5]), int(1)),
            ],
        );
        assert_eq!(i25, want);
        assert!(matches!(closed_form(&GroupSpec::symmetric(3)), Err(Error::UnsupportedFamily(_))));
    }
}
