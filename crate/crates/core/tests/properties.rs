use affine_automata::arrangement::ArrangementSpec;
use affine_automata::automaton::Automaton;
use affine_automata::{AffineWeylGroup, Family, RootSystem};
use proptest::prelude::*;

fn types() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        Just((Family::A, 1)),
        Just((Family::A, 2)),
        Just((Family::A, 3)),
        Just((Family::B, 2)),
        Just((Family::B, 3)),
        Just((Family::C, 3)),
        Just((Family::D, 4)),
        Just((Family::F, 4)),
        Just((Family::G, 2)),
    ]
}

fn typed_word(max_len: usize) -> impl Strategy<Value = (AffineWeylGroup, Vec<usize>)> {
    types().prop_flat_map(move |(f, n)| {
        let g = AffineWeylGroup::new(RootSystem::new(f, n).unwrap());
        let k = g.num_generators();
        (Just(g), prop::collection::vec(0..k, 0..max_len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reflections_preserve_the_form((f, n) in types(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>(), s in any::<prop::sample::Index>()) {
        let rs = RootSystem::new(f, n).unwrap();
        let m = rs.num_positive_roots();
        let (b, c, s) = (b.index(m), c.index(m), s.index(rs.rank()));
        let (rb, rc) = (rs.reflect_root(b, s), rs.reflect_root(c, s));
        let sign = |r: affine_automata::SignedRoot| if r.positive { 1 } else { -1 };
        prop_assert_eq!(rs.gram()[rb.index][rc.index] * sign(rb) * sign(rc), rs.gram()[b][c]);
    }

    #[test]
    fn generators_are_involutions((g, word) in typed_word(12), s in any::<prop::sample::Index>()) {
        let s = s.index(g.num_generators());
        let x = g.evaluate(&word).unwrap();
        prop_assert_eq!(&g.right_multiply(&g.right_multiply(&x, s), s), &x);
        prop_assert_eq!(&g.left_multiply(s, &g.left_multiply(s, &x)), &x);
    }

    #[test]
    fn inverse_of_product((g, u) in typed_word(8), v in prop::collection::vec(0usize..5, 0..8)) {
        let k = g.num_generators();
        let v: Vec<usize> = v.into_iter().map(|s| s % k).collect();
        let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
        let vinv_uinv: Vec<usize> = v.iter().rev().chain(u.iter().rev()).copied().collect();
        prop_assert_eq!(g.inverse(&g.evaluate(&uv).unwrap()), g.evaluate(&vinv_uinv).unwrap());
    }

    #[test]
    fn length_bounds_and_parity((g, word) in typed_word(14)) {
        let x = g.evaluate(&word).unwrap();
        let l = x.length();
        prop_assert!(l <= word.len());
        prop_assert_eq!(l % 2, word.len() % 2);
        prop_assert_eq!(g.is_reduced(&word).unwrap(), l == word.len());
        prop_assert_eq!(g.reduced_word(&x).len(), l);
        prop_assert_eq!(g.evaluate(&g.reduced_word(&x)).unwrap(), x);
    }

    #[test]
    fn region_of_is_monotone_in_n((g, word) in typed_word(14)) {
        // a finer arrangement determines the coarser region
        let x = g.evaluate(&word).unwrap();
        let rs = g.root_system();
        let fine = ArrangementSpec::uniform(rs, 2).region_of(&x);
        let coarse = ArrangementSpec::uniform(rs, 1);
        prop_assert_eq!(coarse.clamp(&fine), coarse.region_of(&x));
    }
}

fn rank2_automaton(pick: usize, n: u32) -> (AffineWeylGroup, Automaton) {
    let (f, r) = [(Family::A, 2), (Family::C, 2), (Family::G, 2)][pick % 3];
    let g = AffineWeylGroup::new(RootSystem::new(f, r).unwrap());
    let a = Automaton::from_arrangement(&g, &ArrangementSpec::uniform(g.root_system(), n));
    (g, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn automaton_accepts_exactly_reduced_words(pick in 0usize..3, n in 0u32..2, word in prop::collection::vec(0usize..3, 0..14)) {
        let (g, a) = rank2_automaton(pick, n);
        prop_assert_eq!(a.accepts(&word).unwrap(), g.is_reduced(&word).unwrap());
    }

    #[test]
    fn minimize_is_idempotent(pick in 0usize..3, keep in prop::collection::vec(any::<bool>(), 49)) {
        let (_, a) = rank2_automaton(pick, 0);
        let states: Vec<usize> = (0..a.num_states()).filter(|&q| keep[q]).collect();
        let sub = a.restrict_accepting(&states);
        let m = sub.minimize();
        let mm = m.minimize();
        prop_assert_eq!(m.num_states(), mm.num_states());
        prop_assert!(m.same_language(&sub));
        prop_assert_eq!(m.count_words(8), sub.count_words(8));
    }

    #[test]
    fn double_reversal_keeps_language(pick in 0usize..3, keep in prop::collection::vec(any::<bool>(), 49)) {
        let (_, a) = rank2_automaton(pick, 0);
        let states: Vec<usize> = (0..a.num_states()).filter(|&q| keep[q]).collect();
        let sub = a.restrict_accepting(&states);
        let rr = sub.reverse().reverse();
        prop_assert!(rr.same_language(&sub));
        prop_assert_eq!(rr.enumerate_words(8), sub.enumerate_words(8));
    }

    #[test]
    fn union_counts_are_additive_on_disjoint_parts(pick in 0usize..3, keep in prop::collection::vec(any::<bool>(), 49)) {
        let (_, a) = rank2_automaton(pick, 0);
        let (ins, outs): (Vec<usize>, Vec<usize>) = (0..a.num_states()).partition(|&q| keep[q]);
        let u = Automaton::union(&[a.restrict_accepting(&ins), a.restrict_accepting(&outs)]).unwrap();
        prop_assert_eq!(u.count_words(9), a.count_words(9));
        prop_assert!(u.same_language(&a));
    }
}
