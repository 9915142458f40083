use diagharm::exact::{int, rat};
use diagharm::groups::{invariant_generators, GeneratorPolicy, GroupSpec};
use diagharm::harmonics::{
    frobenius_series, harmonic_component, hilbert_series, EngineConfig, HarmonicEngine, DEFAULT_MAX_ENTRIES,
};
use diagharm::poly::{monomial_basis, Poly};
use diagharm::symfunc::{irrep_dimension, part};
use diagharm::univariate::UPoly;
use diagharm::universal::{certify_restriction, universal_frobenius};
use proptest::prelude::*;

const GROUPS: [&str; 7] = ["S2", "S3", "C3", "I2(4)", "I2(5)", "G(2,1,2)", "G(3,1,2)"];

fn arb_group() -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(GROUPS.to_vec()).prop_map(|s| s.parse().unwrap())
}

fn arb_degree(r: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=max, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn restriction_reproduces_fewer_sets(g in arb_group(), r in 2usize..=3) {
        let hi = hilbert_series(&g, r, &EngineConfig::default()).unwrap();
        let lo = hilbert_series(&g, r - 1, &EngineConfig::default()).unwrap();
        prop_assert!(certify_restriction(&hi, &lo).is_ok());
    }

    #[test]
    fn components_match_the_stacked_kernel_in_any_order(g in arb_group(), d in arb_degree(3, 2)) {
        let policy = GeneratorPolicy::default_for(&g);
        let mut engine = HarmonicEngine::new(&g, 3, EngineConfig::default()).unwrap();
        let a = engine.component(&d).unwrap();
        let b = harmonic_component(&g, 3, &d, policy, DEFAULT_MAX_ENTRIES).unwrap();
        prop_assert_eq!(&a, &b);
        let mut rev = d.clone();
        rev.reverse();
        prop_assert_eq!(engine.component(&rev).unwrap().dim(), a.dim());
    }

    #[test]
    fn harmonics_are_orthogonal_to_the_ideal(g in arb_group(), d in arb_degree(2, 3), seed in 0usize..1000) {
        // every generator times every monomial of complementary degree pairs to zero
        let policy = GeneratorPolicy::default_for(&g);
        let n = g.n();
        let c = harmonic_component(&g, 2, &d, policy, DEFAULT_MAX_ENTRIES).unwrap();
        prop_assume!(c.dim() > 0);
        let h = &c.basis()[seed % c.dim()];
        for a in 0..=d[0] {
            for b in 0..=d[1] {
                if a + b == 0 {
                    continue;
                }
                let elements = diagharm::groups::enumerate_elements(&g, u64::MAX).unwrap();
                for f in invariant_generators(&g, GeneratorPolicy::Reynolds, Some(&elements), 2, &[a, b]).unwrap() {
                    for m in monomial_basis(2, n, &[d[0] - a, d[1] - b]) {
                        let fm = f.mul(&Poly::monomial(2, n, m, int(1)));
                        prop_assert_eq!(fm.scalar_product(h, int(0)), int(0));
                    }
                }
            }
        }
    }
}

#[test]
fn frobenius_multiplicities_weigh_to_dimensions() {
    for (n, r) in [(2, 3), (3, 1), (3, 2), (3, 3), (4, 2)] {
        let s = frobenius_series(&GroupSpec::symmetric(n), r, &EngineConfig::default()).unwrap();
        for (d, mult) in s.frobenius().unwrap() {
            let total: u64 = mult.iter().map(|(l, c)| c * irrep_dimension(l)).sum();
            assert_eq!(total, s.dim(d), "S{n}, r = {r}, {d:?}");
        }
    }
}

#[test]
fn policies_agree_on_larger_groups() {
    for (name, r) in [("G(2,1,3)", 2), ("I2(6)", 2), ("G(4,1,2)", 2), ("S4", 2)] {
        let g: GroupSpec = name.parse().unwrap();
        let a = hilbert_series(&g, r, &EngineConfig::with_policy(GeneratorPolicy::Polarized)).unwrap();
        let b = hilbert_series(&g, r, &EngineConfig::with_policy(GeneratorPolicy::Reynolds)).unwrap();
        assert_eq!(a.dims(), b.dims(), "{g}");
    }
}

#[test]
fn groups_without_polarized_generators_use_reynolds() {
    let g: GroupSpec = "G(4,2,2)".parse().unwrap();
    assert!(hilbert_series(&g, 2, &EngineConfig::with_policy(GeneratorPolicy::Polarized)).is_err());
    let s = hilbert_series(&g, 1, &EngineConfig::with_policy(GeneratorPolicy::Reynolds)).unwrap();
    assert_eq!(u128::from(s.total_dim()), g.order());
}

fn poly(coeffs: &[i64], denom: i64) -> UPoly {
    UPoly::from_ints(coeffs).scale(&rat(1, denom))
}

#[test]
fn multiplicities_are_polynomial_in_the_number_of_sets() {
    // coefficients listed from the constant term up
    let r = UPoly::x();
    let cases = [
        (3, vec![(part(&[2, 1]), &r * &poly(&[3, 1], 2)), (part(&[1, 1, 1]), &r * &poly(&[-1, 6, 1], 6))]),
        (
            4,
            vec![
                (part(&[3, 1]), &r * &poly(&[11, 6, 1], 6)),
                (part(&[2, 2]), &(&r * &poly(&[1, 1], 1)) * &poly(&[10, 13, 1], 24)),
                (part(&[2, 1, 1]), &(&r * &poly(&[3, 1], 1)) * &poly(&[-12, 74, 27, 1], 120)),
                (part(&[1, 1, 1, 1]), &r * &poly(&[36, -296, 645, 295, 39, 1], 720)),
            ],
        ),
    ];
    for (n, expected) in cases {
        let series = frobenius_series(&GroupSpec::symmetric(n), n, &EngineConfig::default()).unwrap();
        let polys = universal_frobenius(&series).unwrap().multiplicity_polynomials();
        assert_eq!(polys[&part(&[n])], UPoly::one());
        for (lambda, p) in expected {
            assert_eq!(polys[&lambda], p, "S{lambda}");
        }
    }
}
