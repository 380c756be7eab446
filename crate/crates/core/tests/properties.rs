mod common;

use common::*;
use fbstab::characters::{character_table, decompose, inner_product};
use fbstab::cli::parse_spec;
use fbstab::cyclepoly::{parse_poly_with, CharPolynomial};
use fbstab::fbmodules::{character_at, module_weight, terms_at, Budget};
use fbstab::partitions::{partitions_of, CycleType, Partition};
use fbstab::pieri::{pieri_expand, projective_terms, stable_socle_set};
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn partition_text_round_trip(p in arb_partition(6, 7)) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn cycle_type_text_round_trip(t in arb_cycle_type(9)) {
        prop_assert_eq!(t.to_string().parse::<CycleType>().unwrap(), t);
    }

    #[test]
    fn polynomial_text_round_trip(p in arb_poly(4, 3, 6)) {
        prop_assert_eq!(p.to_string().parse::<CharPolynomial>().unwrap(), p.clone());
        prop_assert_eq!(parse_poly_with(&p.display_with("E").to_string(), "E").unwrap(), p);
    }

    #[test]
    fn spec_text_round_trip(s in arb_spec()) {
        prop_assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn rho_is_a_ring_homomorphism(p in arb_poly(3, 2, 4), q in arb_poly(3, 2, 4), m in 0usize..7) {
        let (rp, rq) = (p.eval_rho_all(m), q.eval_rho_all(m));
        prop_assert_eq!(p.mul(&q).eval_rho_all(m), rp.mul(&rq).unwrap());
        prop_assert_eq!(p.add(&q).eval_rho_all(m), rp.add(&rq).unwrap());
    }

    #[test]
    fn decompose_inverts_character(d in arb_decomposition(7)) {
        prop_assert_eq!(decompose(&d.character()).unwrap(), d);
    }

    #[test]
    fn low_weight_polynomials_miss_heavy_characters(p in arb_poly(3, 2, 5), m in 1usize..=8) {
        let d = p.weighted_degree().finite().unwrap_or(0);
        let f = p.eval_rho_all(m);
        let table = character_table(m);
        for lambda in partitions_of(m).into_iter().filter(|l| l.weight() > d) {
            let chi = table.character(&lambda).unwrap();
            prop_assert!(inner_product(&chi, &f).unwrap().is_zero(), "{} against {}", lambda, p);
        }
    }

    #[test]
    fn pieri_weight_bounds(nu in arb_nonempty_partition(3, 3), extra in 0usize..5) {
        let m = nu.size() + extra;
        let terms = pieri_expand(&nu, m).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for mu in &terms {
            prop_assert!(seen.insert(mu.clone()), "repeated factor");
            prop_assert!(nu.weight() <= mu.weight() && mu.weight() <= nu.size());
            prop_assert_eq!(mu.weight() == nu.weight(), *mu == nu.socle().pad(m).unwrap());
            let top = m >= nu.min_pad_degree() && nu.pad(m).map(|p| p == *mu).unwrap_or(false);
            prop_assert_eq!(mu.weight() == nu.size(), top);
        }
    }

    #[test]
    fn pieri_socles_stabilize(nu in arb_nonempty_partition(3, 3), extra in 0usize..4) {
        let m0 = nu.min_pad_degree();
        let m = m0 + extra;
        let socles: std::collections::BTreeSet<Partition> = pieri_expand(&nu, m).unwrap().iter().map(Partition::socle).collect();
        prop_assert_eq!(socles, stable_socle_set(&nu).unwrap());
        if extra == 0 {
            let padded = nu.pad(m0).unwrap();
            prop_assert_eq!(padded.part(0), padded.part(1));
        } else {
            for mu in pieri_expand(&nu, m).unwrap() {
                prop_assert!(mu.part(0) > mu.part(1));
            }
        }
    }

    #[test]
    fn projective_terms_are_additive(a in arb_decomposition(4), k in 1u64..3, extra in 0usize..4) {
        let m = a.degree() + extra;
        prop_assert_eq!(projective_terms(&a.scaled(k), m), projective_terms(&a, m).scaled(k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn terms_agree_with_characters(s in arb_spec(), m in 0usize..7) {
        let b = Budget::default();
        let d = terms_at(&s, m, &b).unwrap();
        prop_assert_eq!(decompose(&character_at(&s, m, &b).unwrap()).unwrap(), d.clone());
        prop_assert!(module_weight(&d) <= m);
    }
}
