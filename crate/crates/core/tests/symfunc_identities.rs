use diagharm::exact::int;
use diagharm::symfunc::{all_partitions, kostka, plethysm, Basis, Partition, SymFunc, SymPolyR};
use proptest::prelude::*;

const BASES: [Basis; 5] = [Basis::M, Basis::E, Basis::H, Basis::P, Basis::S];

fn arb_basis() -> impl Strategy<Value = Basis> {
    prop::sample::select(BASES.to_vec())
}

/// A symmetric function of degree at most 4 with small integer coefficients.
fn arb_symfunc() -> impl Strategy<Value = SymFunc> {
    let parts: Vec<Partition> = (0..=4).flat_map(all_partitions).collect();
    (arb_basis(), prop::collection::vec((prop::sample::select(parts), -3i64..=3), 0..5))
        .prop_map(|(basis, terms)| SymFunc::from_terms(basis, terms.into_iter().map(|(p, c)| (p, int(c)))))
}

#[test]
fn complete_functions_expand_by_kostka_numbers() {
    // h_μ = Σ_λ K_{λ,μ} s_λ, equivalent to the two Cauchy identities agreeing
    for n in 0..=6 {
        for mu in all_partitions(n) {
            let h = SymFunc::basis_element(Basis::H, mu.clone()).to_basis(Basis::S);
            let expected = SymFunc::from_terms(
                Basis::S,
                all_partitions(n).into_iter().map(|l| {
                    let k = kostka(&l, mu.parts());
                    (l, int(k as i64))
                }),
            );
            assert_eq!(h, expected, "h{mu}");
        }
    }
}

#[test]
fn kostka_matrix_is_unitriangular_in_dominance_order() {
    for n in 1..=7 {
        for lambda in all_partitions(n) {
            assert_eq!(kostka(&lambda, lambda.parts()), 1, "K_{lambda},{lambda}");
            for mu in all_partitions(n) {
                if kostka(&lambda, mu.parts()) > 0 {
                    assert!(lambda.dominates(&mu), "K_{lambda},{mu} > 0 without dominance");
                }
            }
        }
    }
}

#[test]
fn cauchy_kernel_with_two_letters() {
    // h_n[X·Y] = Σ_λ s_λ(Y) s_λ(X); with Y = (1, 1) the left side is h_n[2 p_1]
    // and s_λ(1, 1) counts tableaux in two letters
    for n in 1..=5 {
        let two_p1 = SymFunc::term(Basis::P, Partition::row(1), int(2));
        let lhs = plethysm(&SymFunc::basis_element(Basis::H, Partition::row(n)), &two_p1, None).unwrap();
        let rhs = SymFunc::from_terms(
            Basis::S,
            all_partitions(n).into_iter().filter(|l| l.len() <= 2).map(|l| {
                let k = (0..=n).map(|a| kostka(&l, &[a, n - a])).sum::<u64>();
                (l, int(k as i64))
            }),
        );
        assert_eq!(lhs.to_basis(Basis::S), rhs, "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_changes_round_trip(f in arb_symfunc(), target in arb_basis()) {
        let there = f.to_basis(target);
        prop_assert_eq!(there.to_basis(f.basis()), f.clone());
        // the same polynomial in four variables whatever the basis
        prop_assert!(SymPolyR::from_symfunc(&there, 4) == SymPolyR::from_symfunc(&f, 4));
    }

    #[test]
    fn multiplication_commutes_with_basis_change(f in arb_symfunc(), g in arb_symfunc(), target in arb_basis()) {
        let prod = f.try_mul(&g).unwrap().to_basis(target);
        let via = f.to_basis(target).try_mul(&g.to_basis(target)).unwrap().to_basis(target);
        prop_assert_eq!(prod, via);
    }

    #[test]
    fn plethysm_is_a_ring_homomorphism_in_the_outer_argument(f in arb_symfunc(), g in arb_symfunc(), k in 1usize..=2) {
        let inner = SymFunc::basis_element(Basis::P, Partition::row(k))
            .try_add(&SymFunc::basis_element(Basis::H, Partition::row(1)))
            .unwrap();
        let at = |x: &SymFunc| plethysm(x, &inner, Some(8)).unwrap().to_basis(Basis::P);
        let sum = f.try_add(&g).unwrap();
        prop_assert_eq!(at(&sum), at(&f).try_add(&at(&g)).unwrap().to_basis(Basis::P));
        let prod = f.try_mul(&g).unwrap();
        let lhs = at(&prod);
        let rhs = at(&f).try_mul(&at(&g)).unwrap().to_basis(Basis::P);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_sums_compose_under_plethysm(a in 1usize..=3, b in 1usize..=3, c in -3i64..=3) {
        // p_a[c p_b] = c p_{ab}
        let inner = SymFunc::term(Basis::P, Partition::row(b), int(c));
        let got = plethysm(&SymFunc::basis_element(Basis::P, Partition::row(a)), &inner, None).unwrap();
        let expected = SymFunc::term(Basis::P, Partition::row(a * b), int(c));
        prop_assert_eq!(got.to_basis(Basis::P), expected);
    }
}
