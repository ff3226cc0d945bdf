use num_complex::Complex64;
use proptest::prelude::*;

use rigidity::braiding::{
    kappa_fundamental, standard_conjugate_fundamental, verify_conjugate_equations, BraidingSpec,
};
use rigidity::hecke::{jw_generator, verify_s_relations, HeckeParams};
use rigidity::lie::{
    casimir_exponent, kappa_modulus, root_datum, type_a_fundamental_exponent, DominantWeight,
    LieType, Series,
};
use rigidity::rigidity::{defect_51, mu_sign_spectrum_check};
use rigidity::scalars::{rational, rational_to_f64, BigRational};
use rigidity::temperley_lieb::{compose_diagrams, TLDiagram, TLElement};
use rigidity::tensor::{Limits, TensorOperator};

fn lie_type() -> impl Strategy<Value = LieType> {
    prop_oneof![
        Just(Series::A),
        Just(Series::B),
        Just(Series::C),
        Just(Series::D)
    ]
    .prop_flat_map(|s| (Just(s), s.min_rank()..=8))
    .prop_map(|(s, r)| LieType::new(s, r).unwrap())
}

fn weight_for(t: LieType) -> impl Strategy<Value = (LieType, DominantWeight)> {
    (Just(t), prop::collection::vec(0u32..5, t.rank)).prop_map(|(t, c)| (t, DominantWeight::new(c)))
}

/// `±a/b` with `|μ| ≠ 1`.
fn mu() -> impl Strategy<Value = BigRational> {
    (1i64..7, 1i64..7, any::<bool>())
        .prop_filter("|mu| = 1", |(a, b, _)| a != b)
        .prop_map(|(a, b, neg)| rational(if neg { -a } else { a }, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn casimir_positive_off_zero((t, w) in lie_type().prop_flat_map(weight_for)) {
        let rd = root_datum(t).unwrap();
        let e = casimir_exponent(&rd, &w).unwrap();
        prop_assert_eq!(e > rational(0, 1), !w.is_zero());
        prop_assert_eq!(kappa_modulus(&rd, &w).unwrap().is_phase(), w.is_zero());
    }

    #[test]
    fn doubling_gap_is_twice_the_norm((t, w) in lie_type().prop_flat_map(weight_for)) {
        // (2λ, 2λ+2ρ) = 4(λ,λ) + 4(λ,ρ) and (λ, λ+2ρ) = (λ,λ) + 2(λ,ρ), so
        // e(2λ) - 2e(λ) = 2(λ,λ) >= 0 with equality only at zero.
        let rd = root_datum(t).unwrap();
        let double = DominantWeight::new(w.coords().iter().map(|m| 2 * m).collect());
        let gap = casimir_exponent(&rd, &double).unwrap() - casimir_exponent(&rd, &w).unwrap() * rational(2, 1);
        prop_assert_eq!(gap > rational(0, 1), !w.is_zero());
    }

    #[test]
    fn type_a_fundamentals(d in 2usize..9, i in 1usize..8) {
        prop_assume!(i < d);
        let rd = root_datum(LieType::new(Series::A, d - 1).unwrap()).unwrap();
        let e = casimir_exponent(&rd, &DominantWeight::fundamental(d - 1, i)).unwrap();
        prop_assert_eq!(e, type_a_fundamental_exponent(d, i));
    }

    #[test]
    fn hecke_quadratic_relation(d in 2usize..4, mu in mu()) {
        let p = HeckeParams::new(d, mu).unwrap();
        let limits = Limits::default();
        let g: TensorOperator<BigRational> = jw_generator(&p, 1, 2).unwrap();
        let q = p.q();
        let lhs = g.compose(&g).unwrap().materialize(&limits).unwrap();
        let one = TensorOperator::identity(d, 2).materialize(&limits).unwrap();
        let rhs = g.materialize(&limits).unwrap().scale(&(rational(1, 1) - q.clone())).add(&one.scale(&q));
        prop_assert_eq!(lhs, rhs);
        for c in verify_s_relations::<BigRational>(&p, &limits).unwrap() {
            prop_assert!(c.passed, "{}", c.name);
        }
    }

    #[test]
    fn conjugate_equations_and_kappa_modulus(d in 2usize..4, mu in mu(), k in 0i64..6) {
        let p = HeckeParams::new(d, mu).unwrap();
        let limits = Limits::default();
        let pair = standard_conjugate_fundamental::<Complex64>(&p);
        for c in verify_conjugate_equations(&pair, &limits).unwrap() {
            prop_assert!(c.passed, "{}", c.name);
        }
        let spec = BraidingSpec::new(p.clone(), k);
        let kappa = kappa_fundamental::<Complex64>(&spec, &limits).unwrap();
        let expected = rational_to_f64(&p.mu_abs()).powf(((d * d - 1) as f64) / d as f64);
        prop_assert!((kappa.norm() - expected).abs() <= 1e-9 * expected);
    }

    #[test]
    fn spectrum_ignores_the_sign_of_mu(d in 2usize..4, mu in mu()) {
        let p = HeckeParams::new(d, mu).unwrap();
        let c = mu_sign_spectrum_check(&p, 2, &Limits::default()).unwrap();
        prop_assert!(c.passed, "{:?}", c);
    }

    #[test]
    fn defect_positive_off_unit_modulus(mu in mu(), k in 0i64..4) {
        let spec = BraidingSpec::new(HeckeParams::new(2, mu).unwrap(), k);
        prop_assert!(defect_51(&spec, &Limits::default()).unwrap() > 1e-3);
    }

    #[test]
    fn tl_composition_is_associative(a in 0usize..14, b in 0usize..14, c in 0usize..14, num in 1i64..9) {
        let all = TLDiagram::all(4, 4);
        let delta = rational(num, 2);
        let el = |i: usize| TLElement::from_diagram(all[i].clone(), delta.clone());
        let left = el(a).compose(&el(b)).unwrap().compose(&el(c)).unwrap();
        let right = el(a).compose(&el(b).compose(&el(c)).unwrap()).unwrap();
        prop_assert_eq!(left.terms(), right.terms());
        let (ab, loops) = compose_diagrams(&all[a], &all[b]).unwrap();
        prop_assert!(ab.through_strands() <= all[a].through_strands().min(all[b].through_strands()));
        prop_assert!(loops <= 2);
    }
}
