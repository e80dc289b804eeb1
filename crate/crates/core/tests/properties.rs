use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use msdual::crystal::{e_tilde, epsilon, f_tilde, random_vertex};
use msdual::field::GaloisField;
use msdual::involution::{flat, sharp, sharp_random, tau};
use msdual::quiverrep::{classify, closure_leq, realize, RankTable};
use msdual::{LaurentPoly, Multisegment, Segment, VertexRing};

fn ring() -> impl Strategy<Value = VertexRing> {
    prop_oneof![Just(VertexRing::Integers), Just(VertexRing::Cyclic(2)), Just(VertexRing::Cyclic(3)), Just(VertexRing::Cyclic(4))]
}

fn multisegment() -> impl Strategy<Value = Multisegment> {
    (ring(), prop::collection::vec((-3i64..4, 1usize..4, 1usize..3), 0..5)).prop_map(|(ring, segs)| {
        Multisegment::from_segments(ring, segs.into_iter().map(|(o, l, k)| (Segment::new(ring, o, l), k)))
    })
}

fn vertex() -> impl Strategy<Value = Multisegment> {
    (ring(), 0usize..9, any::<u64>()).prop_map(|(ring, len, seed)| random_vertex(ring, len, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..5, -5i64..6), 0..6).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_and_json_round_trip(m in multisegment()) {
        prop_assert_eq!(Multisegment::parse(&m.to_string(), m.ring()).unwrap(), m.clone());
        prop_assert_eq!(Multisegment::from_json(&m.to_json(), m.ring()).unwrap(), m.clone());
        prop_assert_eq!(Multisegment::from_label(&m.to_label(), m.ring()), m);
    }

    #[test]
    fn flat_is_an_involution_and_negates_degree(m in multisegment()) {
        prop_assert_eq!(flat(&flat(&m)), m.clone());
        prop_assert_eq!(flat(&m).degree(), m.degree().negated(m.ring()));
    }

    #[test]
    fn crystal_operators_invert(m in multisegment(), i in -3i64..4) {
        let up = f_tilde(&m, i);
        prop_assert_eq!(e_tilde(&up, i), Some(m.clone()));
        prop_assert_eq!(epsilon(&up, i), epsilon(&m, i) + 1);
        prop_assert_eq!(up.total_degree(), m.total_degree() + 1);
    }

    #[test]
    fn sharp_is_path_independent_involution(m in vertex(), seed in any::<u64>()) {
        let s = sharp(&m).unwrap();
        prop_assert_eq!(sharp(&s).unwrap(), m.clone());
        prop_assert_eq!(sharp_random(&m, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap(), s.clone());
        prop_assert_eq!(s.degree(), m.degree().negated(m.ring()));
        prop_assert_eq!(tau(&m).unwrap(), flat(&s));
    }

    #[test]
    fn realize_then_classify(m in multisegment()) {
        let f3 = GaloisField::new(3).unwrap();
        let rep = realize(&m, &f3);
        prop_assert!(rep.is_nilpotent());
        prop_assert_eq!(rep.rank_table(), RankTable::of_multisegment(&m));
        prop_assert_eq!(classify(&rep).unwrap(), m);
    }

    #[test]
    fn closure_order_is_reflexive_and_antisymmetric(a in multisegment(), b in multisegment()) {
        prop_assert!(closure_leq(&a, &a).unwrap());
        if a.ring() == b.ring() && a.degree() == b.degree() && a != b {
            prop_assert!(!(closure_leq(&a, &b).unwrap() && closure_leq(&b, &a).unwrap()));
        }
    }

    #[test]
    fn bar_symmetric_part_splits_off_v_part(c in laurent()) {
        let g = c.bar_symmetric_part();
        prop_assert!(g.is_bar_invariant());
        prop_assert!((&c - &g).valuation_at_least(1));
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }
}
