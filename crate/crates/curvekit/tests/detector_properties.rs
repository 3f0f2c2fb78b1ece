use curvekit::detectors::{
    disjoint_surrounding, heptagon_certificate, is_surrounding_pair, is_surrounding_triple, triple_chain,
};
use curvekit::topology::{block_twist_word, enumerate_curves};
use curvekit::{apply_word, block_curve, intersection_number, CurveKey, MappingWord};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn blk(b: usize, v: &[usize]) -> CurveKey {
    block_curve(b, v).unwrap()
}

fn word(b: usize) -> impl Strategy<Value = MappingWord> {
    prop::collection::vec((1..b as i64, prop::bool::ANY), 0..6).prop_map(|v| {
        MappingWord::from_signed(&v.into_iter().map(|(i, s)| if s { i } else { -i }).collect::<Vec<_>>()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn surrounding_pairs_are_equivariant(w in word(7)) {
        let (a, c) = (blk(7, &[1, 2, 3]), blk(7, &[2, 3, 4]));
        let cert = is_surrounding_pair(&apply_word(&w, &a), &apply_word(&w, &c)).expect("image is surrounding");
        prop_assert_eq!(cert.omega, apply_word(&w, &blk(7, &[2, 3])));
        let far = (apply_word(&w, &a), apply_word(&w, &blk(7, &[4, 5, 6])));
        prop_assert!(is_surrounding_pair(&far.0, &far.1).is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn surrounding_triples_are_invariant(w in word(7)) {
        let t = [blk(7, &[1, 2, 3]), blk(7, &[7, 1, 2])];
        let third = apply_word(&MappingWord::from_signed(&[1]).unwrap(), &blk(7, &[1, 2, 3]));
        let base = is_surrounding_triple(&t[0], &t[1], &third);
        let img = is_surrounding_triple(&apply_word(&w, &t[0]), &apply_word(&w, &t[1]), &apply_word(&w, &third));
        prop_assert_eq!(base.map(|c| apply_word(&w, &c.omega)), img.map(|c| c.omega));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn transported_heptagons_are_immersed(w in word(7)) {
        let (a, c) = (apply_word(&w, &blk(7, &[1, 2, 3])), apply_word(&w, &blk(7, &[2, 3, 4])));
        let h = heptagon_certificate(&a, &c, &w).unwrap();
        prop_assert!(h.is_valid());
        prop_assert!(h.induced);
    }
}

/// Words fixing the minimal curve around `{2, 3}` on `S_7`.
fn omega_fixing_word(rng: &mut ChaCha8Rng) -> MappingWord {
    let mut w = MappingWord::identity();
    for _ in 0..rng.gen_range(1..=3) {
        let piece = match rng.gen_range(0..4) {
            0 => MappingWord::from_signed(&[2]).unwrap(),
            1 => MappingWord::from_signed(&[rng.gen_range(4..7)]).unwrap(),
            2 => block_twist_word(7, &[1, 2, 3]).unwrap(),
            _ => block_twist_word(7, &[2, 3, 4]).unwrap(),
        };
        let piece = if rng.gen_bool(0.5) { piece } else { piece.inverse() };
        w = w.then_after(&piece);
    }
    w
}

#[test]
fn triple_chain_smoke() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let window = enumerate_curves(7, 18);
    let (a, c) = (blk(7, &[1, 2, 3]), blk(7, &[2, 3, 4]));
    let omega = blk(7, &[2, 3]);
    let (mut found, mut missing) = (0, 0);
    for _ in 0..20 {
        let w = omega_fixing_word(&mut rng);
        assert_eq!(apply_word(&w, &omega), omega);
        let goal = (apply_word(&w, &a), apply_word(&w, &c));
        match triple_chain((&a, &c), (&goal.0, &goal.1), &window, 8).unwrap() {
            Some(chain) => {
                assert_eq!(chain.omega, omega);
                assert_eq!(chain.pairs.last().map(|p| p.iter().collect::<std::collections::BTreeSet<_>>()),
                    Some([&goal.0, &goal.1].into_iter().collect()));
                found += 1;
            }
            None => missing += 1,
        }
    }
    println!("triple chains: {found} found, {missing} not found within bound");
    assert!(found > 0);
}

#[test]
fn disjoint_minimal_curves_have_disjoint_surrounders() {
    let window = enumerate_curves(7, 14);
    for (x, y) in [([1, 2], [3, 4]), ([1, 2], [4, 5]), ([2, 3], [5, 6]), ([6, 7], [3, 4])] {
        let (s, t) = disjoint_surrounding(&blk(7, &x), &blk(7, &y), &window).expect("within window");
        assert_eq!(intersection_number(&s.curves[0], &t.curves[0]), 0);
        assert_eq!((s.omega, t.omega), (blk(7, &x), blk(7, &y)));
    }
}
