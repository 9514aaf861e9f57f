use std::collections::HashMap;

use proptest::prelude::*;
use ybe_growth::algebra::Word;
use ybe_growth::oracle::{infinite_orbit_classes, monoid_orbit_enumerate, DEFAULT_ORBIT_BUDGET};
use ybe_growth::reflection::*;
use ybe_growth::series::RationalGf;
use ybe_growth::Exec;

fn inf(letters: &[i64]) -> ReflectionWord {
    ReflectionWord::infinite(letters.to_vec())
}

#[test]
fn invariant_examples() {
    let t = invariants(&inf(&[1, -1]));
    assert_eq!((t.even, t.odd, t.weight, t.density, t.anchor), (0, 2, 2, 2, 1));
    let t = invariants(&inf(&[-6, -2, -2]));
    assert_eq!((t.weight, t.density, t.anchor, t.ess_even, t.ess_odd), (-6, 4, 2, 1, 2));
    assert_eq!(essentialise(&inf(&[-6, -2, -2])).unwrap(), inf(&[-2, -1, -1]));
    let t = invariants(&inf(&[0, -1]));
    assert_eq!((t.weight, t.density, t.anchor), (1, 1, 0));
    let t = invariants(&inf(&[7, 7, 7]));
    assert_eq!((t.density, t.anchor), (0, 7));
}

#[test]
fn essentialisation_examples() {
    assert_eq!(essentialise(&inf(&[1, -1])).unwrap(), inf(&[0, -1]));
    assert_eq!(essentialise(&inf(&[1, -1, 1])).unwrap(), inf(&[0, -1, 0]));
    assert_eq!(essentialise(&inf(&[3, 4, 2])).unwrap(), inf(&[3, 4, 2]));
    assert!(essentialise(&inf(&[2, 2])).is_err());
    let w = ReflectionWord::finite(6, vec![1, 3, 5]).unwrap();
    assert_eq!(invariants(&essentialise(&w).unwrap()).density, 1);
}

#[test]
fn push_through_examples() {
    assert_eq!(push_through(&inf(&[4]), 1), 7);
    assert_eq!(push_through(&inf(&[]), 9), 9);
    assert_eq!(push_through(&inf(&[0, 1]), 5), 3);
    let w = ReflectionWord::finite(7, vec![3, 5, 6]).unwrap();
    let b = push_through(&w, 2);
    let lhs = w.concat(&ReflectionWord::finite(7, vec![2]).unwrap()).unwrap();
    let rhs = ReflectionWord::finite(7, vec![b]).unwrap().concat(&w).unwrap();
    assert!(elements_equal(&lhs, &rhs).unwrap());
}

#[test]
fn normal_form_examples() {
    assert_eq!(normal_form(&inf(&[1, -1, 1])).word, inf(&[5, 5, 3]));
    assert_eq!(normal_form(&inf(&[7, 7, 7])).word, inf(&[7, 7, 7]));
    assert!(matches!(normal_form(&inf(&[7, 7, 7])).shape, NormalShape::Frozen { letter: 7, power: 3 }));
    let nf = normal_form(&ReflectionWord::finite(5, vec![0, 3, 1, 4]).unwrap());
    match nf.shape {
        NormalShape::Standard { l, .. } => assert_eq!(l, 1),
        ref s => panic!("unexpected shape {s:?}"),
    }
}

#[test]
fn equality_examples() {
    assert!(elements_equal(&inf(&[0, -1]), &inf(&[1, 0])).unwrap());
    assert!(!elements_equal(&inf(&[1, 1]), &inf(&[2, 2])).unwrap());
    let a = ReflectionWord::finite(4, vec![1]).unwrap();
    let b = ReflectionWord::finite(5, vec![1]).unwrap();
    assert!(matches!(elements_equal(&a, &b), Err(ybe_growth::Error::ModulusMismatch(..))));
}

#[test]
fn density_examples() {
    let t1 = invariants(&inf(&[2, 6]));
    let t2 = invariants(&inf(&[0, 6]));
    assert_eq!((t1.density, t1.anchor, t2.density, t2.anchor), (4, 2, 6, 0));
    assert_eq!(density_of_product(&t1, &t2).unwrap(), 2);
    assert_eq!(invariants(&inf(&[2, 6, 0, 6])).density, 2);
    assert_eq!(density_of_product(&t1, &t1).unwrap(), 4);
    let full = invariants(&inf(&[0, 1]));
    assert_eq!(density_of_product(&full, &t2).unwrap(), 1);
}

#[test]
fn lemma_examples() {
    let n = triple_gcd_witness(2, 4, 3, None).unwrap();
    assert_eq!(gcd(2 + 3 * n, 4 + 3 * n), 1);
    let n = triple_gcd_witness(1, 4, 2, Some(Parity::Even)).unwrap();
    assert_eq!(n % 2, 0);
    assert_eq!(gcd(1 + 2 * n, 4 + 2 * n), 1);
    let n = triple_gcd_witness(6, 10, 0, None).unwrap();
    assert_eq!(gcd(6, 10), 2);
    assert!(n >= 1);
    let m = lift_to_coprime(&[2, 4], 5, true).unwrap();
    let lifted: Vec<i64> = [2, 4].iter().zip(&m).map(|(a, k)| a + k * 5).collect();
    assert_eq!(gcd_all(lifted.iter().copied()), 1);
    assert!(lifted.iter().all(|x| x.rem_euclid(2) == 1));
    assert_eq!(lift_to_coprime(&[1, 1], 8, false).unwrap(), vec![0, 0]);
    let m = lift_to_coprime(&[0, 3], 9, false).unwrap();
    assert_eq!(gcd(9 * m[0], 3 + 9 * m[1]), 3);
}

#[test]
fn frs_examples() {
    let w = ReflectionWord::finite(5, vec![0, 1]).unwrap();
    let img = frs_embed(&w).unwrap();
    assert_eq!(img, FrsImage::Odd { weight: 4, length: 2 });
    assert!(frs_image_membership(&img, 5));
    assert!(frs_embed(&ReflectionWord::finite(4, vec![0, 2]).unwrap()).is_err());
    for a in 0..6 {
        for b in 0..6 {
            let w = ReflectionWord::finite(6, vec![a, b]).unwrap();
            if let Ok(FrsImage::Even { weight, .. }) = frs_embed(&w) {
                assert!(weight == 1 || weight == 5);
            }
        }
    }
}

#[test]
fn growth_examples() {
    assert_eq!(frs_growth_gf(1).unwrap(), RationalGf::from_ints(&[0, 1], &[1, -1]).unwrap());
    assert_eq!(frs_growth_gf(5).unwrap().expand(6).to_i64(), vec![0, 0, 4, 5, 5, 5, 5]);
    let two = RationalGf::from_ints(&[0, 0, 1], &[1, -2, 1]).unwrap();
    assert_eq!(frs_growth_gf(2).unwrap(), two);
    assert_eq!(monoid_growth_reflections(1).unwrap(), RationalGf::geometric());
    assert_eq!(monoid_growth_reflections(2).unwrap(), RationalGf::geometric().pow(2));
    assert_eq!(monoid_growth_reflections(5).unwrap().expand(4).to_i64(), vec![1, 5, 9, 10, 10]);
    for d in 1..=40 {
        assert_eq!(monoid_growth_reflections(d).unwrap(), monoid_growth_reflections_by_levels(d).unwrap(), "d = {d}");
    }
}

#[test]
fn full_length_two_count_is_totient() {
    for d in 2..=12u64 {
        let mut images = std::collections::HashSet::new();
        for a in 0..d as i64 {
            for b in 0..d as i64 {
                if let Ok(img) = frs_embed(&ReflectionWord::finite(d, vec![a, b]).unwrap()) {
                    images.insert(img);
                }
            }
        }
        assert_eq!(images.len() as u64, phi(d), "d = {d}");
    }
}

/// Over `R_d`, the invariant key separates exactly the braiding orbits, normal
/// forms stay in their orbit, and full images are as predicted.
#[test]
fn finite_invariants_are_complete() {
    for d in 1..=8u64 {
        let max_len = if d <= 4 { 8 } else { 6 };
        let sol = reflection_quandle(d).unwrap();
        let orbits = monoid_orbit_enumerate(&sol, max_len, Exec::Parallel, DEFAULT_ORBIT_BUDGET);
        assert!(orbits.is_complete());
        for len in 0..=max_len {
            let level = &orbits.levels[len];
            let mut key_to_orbit = HashMap::new();
            let mut orbit_to_key = HashMap::new();
            for code in 0..d.pow(len as u32) {
                let w = ReflectionWord::from_word(d, &Word::decode(code, d as usize, len)).unwrap();
                let id = level.orbit_of_code(code);
                let key = invariants(&w).key();
                assert_eq!(*key_to_orbit.entry(key).or_insert(id), id, "d = {d}, {w}");
                assert_eq!(*orbit_to_key.entry(id).or_insert(key), key, "d = {d}, {w}");
                if let Ok(img) = frs_embed(&w) {
                    assert!(frs_image_membership(&img, d));
                }
            }
            for rep in &level.representatives {
                let w = ReflectionWord::from_word(d, rep).unwrap();
                let nf = normal_form(&w);
                let nf_id = orbits.orbit_id(&nf.word.to_word().unwrap()).unwrap();
                assert_eq!(nf_id, orbits.orbit_id(rep).unwrap(), "d = {d}, {w}");
                assert_eq!(nf.invariants.key(), invariants(&nf.word).key());
            }
            let full: usize = level
                .representatives
                .iter()
                .filter(|r| frs_embed(&ReflectionWord::from_word(d, r).unwrap()).is_ok())
                .count();
            let expected = frs_growth_gf(d).unwrap().expand(max_len).to_i64()[len];
            assert_eq!(full as i64, expected, "d = {d}, n = {len}");
        }
    }
}

#[test]
fn infinite_invariants_against_windowed_oracle() {
    let mut words: Vec<Vec<i64>> = Vec::new();
    for len in 1..=3usize {
        for code in 0..5i64.pow(len as u32) {
            words.push((0..len).map(|i| (code / 5i64.pow(i as u32)) % 5 - 2).collect());
        }
    }
    for w in words.clone() {
        words.push(normal_form(&inf(&w)).word.letters().to_vec());
    }
    let classes = infinite_orbit_classes(&words, 32, 50_000_000).unwrap();
    assert!(classes.stable);
    let mut key_to_class = HashMap::new();
    let mut class_to_key = HashMap::new();
    for (w, &c) in words.iter().zip(&classes.class_of) {
        let key = invariants(&inf(w)).key();
        assert_eq!(*key_to_class.entry(key).or_insert(c), c, "{w:?}");
        assert_eq!(*class_to_key.entry(c).or_insert(key), key, "{w:?}");
    }
}

fn arb_infinite_word() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, 0..10)
}

proptest! {
    #[test]
    fn invariants_survive_braid_moves(w in arb_infinite_word(), moves in prop::collection::vec((0usize..10, any::<bool>()), 0..30)) {
        let start = inf(&w);
        let mut cur = start.clone();
        for (i, fwd) in moves {
            if cur.len() >= 2 {
                let i = i % (cur.len() - 1);
                cur = if fwd { cur.braid_at(i) } else { cur.unbraid_at(i) };
            }
        }
        prop_assert_eq!(invariants(&cur), invariants(&start));
        prop_assert_eq!(normal_form(&cur).word, normal_form(&start).word);
        prop_assert!(elements_equal(&cur, &normal_form(&start).word).unwrap());
    }

    #[test]
    fn finite_braid_moves(d in 1u64..30, w in prop::collection::vec(0i64..30, 0..10), i in 0usize..10) {
        let w = ReflectionWord::finite(d, w).unwrap();
        if w.len() >= 2 {
            let moved = w.braid_at(i % (w.len() - 1));
            prop_assert_eq!(invariants(&moved).key(), invariants(&w).key());
            prop_assert_eq!(normal_form(&moved).word, normal_form(&w).word);
        }
    }
}
