use std::collections::{HashMap, HashSet};

use proptest::prelude::*;
use ybe_growth::algebra::*;
use ybe_growth::oracle::{monoid_orbit_enumerate, DEFAULT_ORBIT_BUDGET};
use ybe_growth::series::{Polynomial, RationalGf};
use ybe_growth::transposition::*;
use ybe_growth::Exec;

fn word(d: usize, s: &str) -> TranspositionWord {
    TranspositionWord::parse(d, s).unwrap()
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

#[test]
fn partitions() {
    let a = word(5, "e_(1,2)e_(2,3)e_(4,5)e_(1,2)");
    assert_eq!(word_partition(&a).to_string(), "{{1,2,3},{4,5}}");
    assert_eq!(word_partition(&TranspositionWord::empty(3)).num_blocks(), 3);
    let b = word(5, "e_(2,3)e_(1,5)e_(2,5)e_(3,4)e_(1,2)");
    assert!(word_partition(&b).is_full());
    assert!(!word_partition(&a).is_full());
}

#[test]
fn embedding() {
    let e = fts_embed(&word(3, "e_(1,2)")).unwrap();
    assert_eq!((e.perm, e.length), (Permutation::transposition(3, 0, 1), 1));
    let e = fts_embed(&word(3, "e_(1,2)e_(1,2)")).unwrap();
    assert!(e.perm.is_identity());
    assert_eq!(e.length, 2);
    let e = fts_embed(&word(3, "e_(1,2)e_(2,3)")).unwrap();
    assert_eq!(e.perm.cycle_type(), vec![3]);
    assert!(fts_embed(&TranspositionWord::empty(3)).is_err());
}

#[test]
fn membership() {
    let id3 = Permutation::identity(3);
    let t12 = Permutation::transposition(3, 0, 1);
    assert!(!fts_image_membership(&id3, 2, 3));
    assert!(fts_image_membership(&id3, 4, 3));
    assert!(!fts_image_membership(&t12, 1, 3));
    assert!(fts_image_membership(&t12, 3, 3));
    assert!(fts_image_membership(&Permutation::transposition(2, 0, 1), 1, 2));
}

#[test]
fn normal_form_examples() {
    let id = |d| Permutation::identity(d);
    assert_eq!(fts_normal_form(&id(2), 4, 2).unwrap(), word(2, "e_(1,2)^4"));
    assert_eq!(fts_normal_form(&Permutation::transposition(3, 0, 1), 3, 3).unwrap(), word(3, "e_(2,3)^2e_(1,2)"));
    assert_eq!(fts_normal_form(&id(3), 4, 3).unwrap(), word(3, "e_(1,2)^2e_(2,3)^2"));
    assert!(fts_normal_form(&id(3), 2, 3).is_err());
}

/// Orbit data for every word of each length, checked against partitions and images.
#[test]
fn invariants_against_orbit_oracle() {
    for d in 2..=4 {
        let sol = transposition_solution(d).unwrap();
        let pairs = transposition_pairs(d);
        let max_len = if d == 4 { 6 } else { 7 };
        let orbits = monoid_orbit_enumerate(&sol, max_len, Exec::Parallel, DEFAULT_ORBIT_BUDGET);
        assert!(orbits.is_complete());
        for len in 1..=max_len {
            let level = &orbits.levels[len];
            let mut partition_of: HashMap<usize, SetPartition> = HashMap::new();
            let mut image_of: HashMap<usize, FtsImage> = HashMap::new();
            let mut full_images = HashSet::new();
            let mut full_orbits = HashSet::new();
            let total = pairs.len().pow(len as u32) as u64;
            for code in 0..total {
                let w = Word::decode(code, pairs.len(), len);
                let tw = TranspositionWord::from_word(d, &w).unwrap();
                let id = level.orbit_of_code(code);
                let p = word_partition(&tw);
                let img = fts_embed(&tw).unwrap();
                assert_eq!(partition_of.entry(id).or_insert_with(|| p.clone()), &p);
                assert_eq!(image_of.entry(id).or_insert_with(|| img.clone()), &img);
                if p.is_full() {
                    full_orbits.insert(id);
                    full_images.insert(img);
                }
            }
            assert_eq!(full_orbits.len(), full_images.len(), "d = {d}, n = {len}");
            let expected = (0..factorial(d) as usize)
                .filter(|&r| fts_image_membership(&Permutation::unrank(d, r), len, d))
                .count();
            assert_eq!(full_images.len(), expected, "d = {d}, n = {len}");
            for img in &full_images {
                let nf = fts_normal_form(&img.perm, len, d).unwrap();
                assert_eq!(&fts_embed(&nf).unwrap(), img);
                assert_eq!(transposition_normal_form(&nf), nf);
            }
        }
    }
}

#[test]
fn growth_examples() {
    assert_eq!(fts_growth_gf(1), RationalGf::one());
    assert_eq!(fts_growth_gf(2), RationalGf::from_ints(&[0, 1], &[1, -1]).unwrap());
    assert_eq!(fts_growth_gf(3), RationalGf::from_ints(&[0, 0, 2, 1], &[1, -1]).unwrap());
    assert_eq!(fts_growth_gf(3).expand(5).to_i64(), vec![0, 0, 2, 3, 3, 3]);
    assert_eq!(fts_growth_gf(4).expand(7).to_i64(), vec![0, 0, 0, 6, 11, 12, 12, 12]);
    assert_eq!(monoid_growth_transpositions(2).unwrap(), RationalGf::geometric());
    let m3 = RationalGf::new(
        &Polynomial::from_ints(&[1, 1]) * &Polynomial::from_ints(&[1, 1, 1]),
        Polynomial::from_ints(&[1, -1]),
    )
    .unwrap();
    assert_eq!(monoid_growth_transpositions(3).unwrap(), m3);
    let geo_t = RationalGf::from_ints(&[0, 1], &[1, -1]).unwrap();
    let m4 = [
        RationalGf::one(),
        geo_t.scale(&ybe_growth::series::q(6)),
        fts_growth_gf(3).scale(&ybe_growth::series::q(4)),
        fts_growth_gf(4),
        geo_t.pow(2).scale(&ybe_growth::series::q(3)),
    ]
    .iter()
    .fold(RationalGf::zero(), |acc, x| &acc + x);
    assert_eq!(monoid_growth_transpositions(4).unwrap(), m4);
    assert!(monoid_growth_transpositions(0).is_err());
    assert!(monoid_growth_transpositions(13).is_err());
}

#[test]
fn fts_growth_stabilises_at_half_factorial() {
    for d in 2..=8 {
        let s = fts_growth_gf(d).expand(3 * d).to_i64();
        for (n, &c) in s.iter().enumerate().skip(2 * d - 3) {
            assert_eq!(c, factorial(d) / 2, "d = {d}, n = {n}");
        }
    }
}

#[test]
fn monoid_growth_matches_orbit_counts() {
    for d in 2..=4 {
        let max_len = if d == 4 { 6 } else { 7 };
        let orbits =
            monoid_orbit_enumerate(&transposition_solution(d).unwrap(), max_len, Exec::Parallel, DEFAULT_ORBIT_BUDGET);
        let series = monoid_growth_transpositions(d).unwrap().expand(max_len).to_i64();
        let counts: Vec<i64> = orbits.per_length_counts.iter().map(|&c| c as i64).collect();
        assert_eq!(series, counts, "d = {d}");
    }
}

#[test]
fn egf_coefficients() {
    let egf = egf_transposition_monoids(8, 5).unwrap();
    assert_eq!(egf_coefficient(&egf, 0).to_i64(), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
    assert_eq!(egf_coefficient(&egf, 1).to_i64(), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
    for d in 2..=5 {
        assert_eq!(egf_coefficient(&egf, d), monoid_growth_transpositions(d).unwrap().expand(8), "d = {d}");
    }
}

fn arb_word(d: usize) -> impl Strategy<Value = TranspositionWord> {
    let pairs = transposition_pairs(d);
    prop::collection::vec(prop::sample::select(pairs), 0..8).prop_map(move |l| TranspositionWord::new(d, l).unwrap())
}

proptest! {
    #[test]
    fn partition_of_product_is_join(a in arb_word(6), b in arb_word(6)) {
        let ab = a.concat(&b).unwrap();
        prop_assert_eq!(word_partition(&ab), partition_of_product(&a, &b).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent(a in arb_word(5)) {
        let nf = transposition_normal_form(&a);
        prop_assert_eq!(nf.len(), a.len());
        prop_assert_eq!(nf.permutation(), a.permutation());
        prop_assert_eq!(word_partition(&nf), word_partition(&a));
        prop_assert_eq!(transposition_normal_form(&nf), nf);
    }
}
