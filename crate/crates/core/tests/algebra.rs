use std::collections::HashSet;

use proptest::prelude::*;
use ybe_growth::algebra::*;
use ybe_growth::Error;

/// Class products by multiplying every pair of elements.
fn brute_class_product(g: &FiniteGroupTable, dec: &ConjugacyDecomposition, i: usize, j: usize) -> ClassMask {
    let mut m = ClassMask::EMPTY;
    for &a in dec.class(i) {
        for &b in dec.class(j) {
            m.insert(dec.class_of(g.mul(a, b)));
        }
    }
    m
}

#[test]
fn symmetric_and_dihedral_classes() {
    let s3 = make_symmetric_group(3).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(conjugacy_classes(&s3).unwrap().sizes(), vec![1, 3, 2]);
    let s4 = make_symmetric_group(4).unwrap();
    assert_eq!(conjugacy_classes(&s4).unwrap().sizes(), vec![1, 6, 3, 8, 6]);
    let d5 = make_dihedral_group(5).unwrap();
    assert_eq!(d5.order(), 10);
    assert_eq!(conjugacy_classes(&d5).unwrap().sizes(), vec![1, 5, 2, 2]);
    assert_eq!(conjugacy_classes(&make_dihedral_group(7).unwrap()).unwrap().len(), 5);
    let s1 = make_symmetric_group(1).unwrap();
    assert_eq!(s1.order(), 1);
    assert_eq!(conjugacy_classes(&s1).unwrap().len(), 1);
}

#[test]
fn size_guards() {
    assert!(make_symmetric_group(0).is_err());
    assert!(make_symmetric_group(9).is_err());
    assert!(make_dihedral_group(1001).is_err());
}

#[test]
fn class_products_match_displayed_tables() {
    let s3 = make_symmetric_group(3).unwrap();
    let dec = conjugacy_classes(&s3).unwrap();
    let t = class_product_table(&s3, &dec);
    assert_eq!(t.get(1, 1), ClassMask::from_indices([0, 2]));
    assert_eq!(t.get(1, 1).to_string(), "{0,2}");
    let s4 = make_symmetric_group(4).unwrap();
    let dec4 = conjugacy_classes(&s4).unwrap();
    let t4 = class_product_table(&s4, &dec4);
    assert_eq!(t4.get(1, 4), ClassMask::from_indices([2, 3]));
    for (g, dec, t) in [(&s3, &dec, &t), (&s4, &dec4, &t4)] {
        for i in 0..dec.len() {
            assert_eq!(t.get(0, i), ClassMask::single(i));
            for j in 0..dec.len() {
                assert_eq!(t.get(i, j), t.get(j, i));
                assert_eq!(t.get(i, j), brute_class_product(g, dec, i, j));
            }
        }
    }
}

#[test]
fn commutator_subgroups() {
    for d in 2..=6 {
        let g = make_symmetric_group(d).unwrap();
        let expected: usize = (1..=d).product::<usize>() / 2;
        assert_eq!(commutator_subgroup(&g).unwrap().len(), expected, "S_{d}");
    }
    let c2 = FiniteGroupTable::from_table(vec!["1".into(), "s".into()], vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(commutator_subgroup(&c2).unwrap(), vec![0]);
}

#[test]
fn table_validation() {
    let bad = FiniteGroupTable::from_table(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]]);
    assert!(matches!(bad, Err(Error::InvalidGroup(_))));
    let g = make_dihedral_group(4).unwrap();
    let back = FiniteGroupTable::from_json(&g.to_json()).unwrap();
    assert_eq!(back.order(), 8);
    for a in 0..8 {
        for b in 0..8 {
            assert_eq!(back.mul(a, b), g.mul(a, b));
        }
    }
}

#[test]
fn quandles() {
    let r2 = reflection_solution(2).unwrap();
    assert!((0..2).all(|x| (0..2).all(|y| r2.op(x, y) == y)));
    let r5 = reflection_solution(5).unwrap();
    assert_eq!(r5.op(1, 4), 3);
    let r3 = reflection_solution(3).unwrap();
    assert_eq!((0..3).map(|y| r3.op(0, y)).collect::<Vec<_>>(), vec![0, 2, 1]);

    let s3 = make_symmetric_group(3).unwrap();
    let t3 = conjugation_solution(&s3, &transposition_elements(&s3)).unwrap();
    assert_eq!(t3.size(), 3);
    let s4 = make_symmetric_group(4).unwrap();
    let all: Vec<usize> = (0..24).collect();
    assert_eq!(conjugation_solution(&s4, &all).unwrap().size(), 24);

    // Reflections of D_5 against the 2x − y rule, matched by vertex.
    let d5 = make_dihedral_group(5).unwrap();
    let refl = conjugation_solution(&d5, &reflection_elements(&d5)).unwrap();
    assert!(refl.is_isomorphism(&r5, &[0, 1, 2, 3, 4]));

    // A subset not closed under conjugation.
    let some = vec![s3.identity(), transposition_elements(&s3)[0], transposition_elements(&s3)[1]];
    assert!(conjugation_solution(&s3, &some).is_err());

    let not_idempotent = QuandleSolution::new(vec![vec![1, 0], vec![1, 0]], None);
    assert!(matches!(not_idempotent, Err(Error::InvalidQuandle(_))));
    let t4 = transposition_solution(4).unwrap();
    assert!(t4.satisfies_braid_relation());
    assert_eq!(t4.label(0), "(1,2)");
}

#[test]
fn length_series() {
    let s3 = make_symmetric_group(3).unwrap();
    let ls = generic_length_series(&s3, &transposition_elements(&s3), 3);
    assert_eq!(ls.series.to_i64(), vec![1, 3, 2, 0]);
    assert!(ls.covered);
    let d5 = make_dihedral_group(5).unwrap();
    assert_eq!(generic_length_series(&d5, &reflection_elements(&d5), 2).series.to_i64(), vec![1, 5, 4]);
    let c2 = FiniteGroupTable::from_table(vec!["1".into(), "s".into()], vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(generic_length_series(&c2, &[1], 1).series.to_i64(), vec![1, 1]);
    let partial = generic_length_series(&s3, &transposition_elements(&s3)[..1], 3);
    assert!(!partial.covered);
}

#[test]
fn set_partitions() {
    let p = SetPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
    let q = SetPartition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
    assert!(p.join(&q).unwrap().is_full());
    assert!(matches!(p.join(&SetPartition::discrete(4)), Err(Error::GroundSetMismatch(3, 4))));
    let all4 = enumerate_set_partitions(4);
    assert_eq!(all4.len(), 15);
    assert_eq!(all4.iter().filter(|p| p.shape() == vec![2, 2]).count(), 3);
    assert_eq!(integer_partition_multiplicity(&[2, 2], 4).unwrap(), 3.into());
    assert_eq!(integer_partition_multiplicity(&[2, 1], 3).unwrap(), 3.into());
    assert_eq!(enumerate_set_partitions(3).iter().filter(|p| p.shape() == vec![2, 1]).count(), 3);
    assert_eq!(integer_partitions(4), vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    assert_eq!(SetPartition::new(5, vec![vec![0, 1, 2], vec![3, 4]]).unwrap().to_string(), "{{1,2,3},{4,5}}");
}

#[test]
fn permutations() {
    let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
    let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
    assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
    assert_eq!(a.compose(&b).length(), 2);
    assert_eq!(Permutation::identity(4).cycle_count(), 4);
}

fn perm(d: usize) -> impl Strategy<Value = Permutation> {
    let n: usize = (1..=d).product();
    (0..n).prop_map(move |r| Permutation::unrank(d, r))
}

fn partition(d: usize) -> impl Strategy<Value = SetPartition> {
    prop::collection::vec((0..d, 0..d), 0..d).prop_map(move |e| SetPartition::from_edges(d, e))
}

proptest! {
    #[test]
    fn permutation_laws(a in perm(6), b in perm(6), c in perm(6)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(Permutation::unrank(6, a.rank()), a.clone());
        prop_assert_eq!(a.length() + a.cycle_count(), 6);
    }

    #[test]
    fn join_is_a_lattice_operation(p in partition(6), q in partition(6), r in partition(6)) {
        prop_assert_eq!(p.join(&q).unwrap(), q.join(&p).unwrap());
        prop_assert_eq!(p.join(&q).unwrap().join(&r).unwrap(), p.join(&q.join(&r).unwrap()).unwrap());
        prop_assert_eq!(p.join(&p).unwrap(), p.clone());
    }

    #[test]
    fn length_series_sums_to_order(d in 2usize..=5) {
        let g = make_symmetric_group(d).unwrap();
        let ls = generic_length_series(&g, &transposition_elements(&g), d);
        let total: i64 = ls.series.to_i64().iter().sum();
        prop_assert_eq!(total as usize, g.order());
    }
}

#[test]
fn words() {
    let w: Word = "0,2,1".parse().unwrap();
    assert_eq!(w.to_string(), "0,2,1");
    let code = w.encode(3);
    assert_eq!(Word::decode(code, 3, 3), w);
    let seen: HashSet<u64> = (0..27).map(|c| Word::decode(c, 3, 3).encode(3)).collect();
    assert_eq!(seen.len(), 27);
}
