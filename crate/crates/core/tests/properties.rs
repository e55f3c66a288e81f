use proptest::prelude::*;

use modgeo::binwords::{from_composition, runs_of};
use modgeo::enumerate;
use modgeo::geometry::{self, Classification};
use modgeo::{BinaryWord, Composition, HalfTurnWord, Sign};

fn word(max_len: usize) -> impl Strategy<Value = BinaryWord> {
    (1..=max_len).prop_flat_map(|len| {
        (0..(1u64 << len)).prop_map(move |bits| BinaryWord::from_bits(bits, len).unwrap())
    })
}

fn composition() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1u32..=6, 1..=5).prop_map(|p| Composition::new(p).unwrap())
}

proptest! {
    #[test]
    fn encode_respects_concatenation(u in word(12), v in word(12)) {
        let uv = u.concat(&v).unwrap();
        prop_assert_eq!(geometry::encode(&uv), &geometry::encode(&u) * &geometry::encode(&v));
    }

    #[test]
    fn trace_is_a_class_invariant(w in word(24), k in 0i64..24) {
        let a = geometry::encode(&w);
        let b = geometry::encode(&w.rotate(k));
        prop_assert_eq!(a.trace_abs(), b.trace_abs());
    }

    #[test]
    fn nonconstant_words_are_hyperbolic(w in word(24)) {
        let class = geometry::classify(&geometry::encode(&w));
        prop_assert_eq!(class == Classification::Parabolic, w.is_constant());
        prop_assert_ne!(class, Classification::Elliptic);
    }

    #[test]
    fn depth_is_a_class_invariant(w in word(14), k in 0i64..14) {
        prop_assume!(!w.is_constant());
        let a = geometry::max_depth(&w).unwrap();
        let b = geometry::max_depth(&w.rotate(k)).unwrap();
        prop_assert!((a.apex - b.apex).abs() < 1e-9);
        prop_assert!(a.bfs_agrees);
    }

    #[test]
    fn phi_round_trip(c in composition()) {
        let h = enumerate::phi_inverse(&c).unwrap();
        prop_assert!(enumerate::is_canonical_reciprocal(&h));
        prop_assert_eq!(enumerate::phi(&h).unwrap(), c.clone());
        prop_assert_eq!(h.word().max_cyclic_run(), c.max_part() as usize);
    }

    #[test]
    fn runs_round_trip(w in word(30)) {
        let lead = w.get(0);
        prop_assert_eq!(from_composition(&runs_of(&w), lead).unwrap(), w);
    }

    #[test]
    fn normal_form_pair(half in word(20)) {
        let h = HalfTurnWord::from_first_half(&half).unwrap();
        let (partner, k0) = h.half_turn_partner();
        prop_assert_eq!(partner.half_turn_partner().0.word().canonical_form(), h.word().canonical_form());
        prop_assert_eq!(h.is_primitive(), h.word().is_primitive());
        prop_assert!(k0 >= 1 && k0 <= h.t());
        prop_assert_eq!(enumerate::canonical_reciprocal(&h), enumerate::canonical_reciprocal(&partner));
    }

    #[test]
    fn power_map_has_the_right_root(w in word(8), n in 2usize..4) {
        prop_assume!(w.is_primitive());
        let img = enumerate::power_map(&w, n).unwrap();
        let (root, e) = img.primitive_root();
        prop_assert_eq!(e, n);
        prop_assert_eq!(root.canonical_form(), w.canonical_form());
    }
}

#[test]
fn constant_word_runs() {
    let w = BinaryWord::constant(5, Sign::Plus).unwrap();
    assert_eq!(w.max_cyclic_run(), 5);
    assert!(!geometry::in_thick_part(&w, 4));
}
