use ybe_growth::algebra::*;
use ybe_growth::group_growth::{as_reflections_group_gf, as_transpositions_group_gf};
use ybe_growth::oracle::*;
use ybe_growth::reflection::{monoid_growth_reflections, reflection_quandle};
use ybe_growth::Exec;

fn counts(sol: &QuandleSolution, n: usize, exec: Exec) -> Vec<u64> {
    monoid_orbit_enumerate(sol, n, exec, DEFAULT_ORBIT_BUDGET).per_length_counts
}

#[test]
fn orbit_count_examples() {
    assert_eq!(counts(&transposition_solution(2).unwrap(), 4, Exec::Sequential), vec![1, 1, 1, 1, 1]);
    assert_eq!(counts(&transposition_solution(3).unwrap(), 4, Exec::Sequential), vec![1, 3, 5, 6, 6]);
    assert_eq!(counts(&reflection_quandle(5).unwrap(), 3, Exec::Sequential), vec![1, 5, 9, 10]);
}

#[test]
fn representatives_are_minimal() {
    let sol = reflection_quandle(4).unwrap();
    let e = monoid_orbit_enumerate(&sol, 4, Exec::Parallel, DEFAULT_ORBIT_BUDGET);
    for level in &e.levels[1..] {
        for (id, rep) in level.representatives.iter().enumerate() {
            let orbit = orbit_of_word(&sol, rep, 1_000).unwrap();
            assert_eq!(orbit.iter().min().unwrap(), rep);
            assert!(orbit.iter().all(|w| e.orbit_id(w) == Some(id)));
        }
        assert_eq!(level.count as usize, level.representatives.len());
    }
}

#[test]
fn budget_cutoff() {
    let e = monoid_orbit_enumerate(&transposition_solution(4).unwrap(), 8, Exec::Sequential, 50_000);
    assert_eq!(e.cutoff, Some(7));
    assert_eq!(e.per_length_counts.len(), 7);
    assert!(!e.is_complete());
}

#[test]
fn orbit_equal_examples() {
    let t3 = transposition_solution(3).unwrap();
    let w = Word::new(vec![0, 1, 2, 1]);
    assert!(orbit_equal(&t3, &w, &w, 100).unwrap());
    assert!(orbit_equal(&t3, &Word::new(vec![0, 1]), &Word::new(vec![2, 0]), 100).unwrap());
    assert!(!orbit_equal(&t3, &Word::new(vec![0]), &Word::new(vec![0, 0]), 100).unwrap());
    let r5 = reflection_quandle(5).unwrap();
    assert!(!orbit_equal(&r5, &Word::new(vec![1, 1]), &Word::new(vec![3, 3]), 100).unwrap());
}

#[test]
fn counts_invariant_under_cyclic_relabelling() {
    for d in 3..=7 {
        let sol = reflection_quandle(d).unwrap();
        let shift: Vec<usize> = (0..d as usize).map(|x| (x + 1) % d as usize).collect();
        let relabelled = sol.relabel(&shift).unwrap();
        assert!(sol.is_isomorphism(&relabelled, &shift));
        assert_eq!(counts(&sol, 5, Exec::Parallel), counts(&relabelled, 5, Exec::Parallel));
    }
}

#[test]
fn moves_are_invertible() {
    for sol in [transposition_solution(4).unwrap(), reflection_quandle(6).unwrap()] {
        assert!(sol.is_involutory());
        for x in 0..sol.size() {
            for y in 0..sol.size() {
                let (u, v) = sol.r(x, y);
                assert_eq!((v, sol.op(v, u)), (x, y));
                assert_eq!(sol.op(x, sol.op(x, y)), y);
            }
        }
    }
}

#[test]
fn sequential_equals_parallel() {
    for sol in [transposition_solution(4).unwrap(), reflection_quandle(6).unwrap()] {
        let a = monoid_orbit_enumerate(&sol, 6, Exec::Sequential, DEFAULT_ORBIT_BUDGET);
        let b = monoid_orbit_enumerate(&sol, 6, Exec::Parallel, DEFAULT_ORBIT_BUDGET);
        assert_eq!(a.per_length_counts, b.per_length_counts);
        for (x, y) in a.levels.iter().zip(&b.levels) {
            assert_eq!(x.representatives, y.representatives);
        }
    }
    let g = make_symmetric_group(4).unwrap();
    let gens = transposition_generators(&g);
    let a = group_ball_enumerate(&g, &gens, 8, Exec::Sequential, DEFAULT_BALL_BUDGET).unwrap();
    let b = group_ball_enumerate(&g, &gens, 8, Exec::Parallel, DEFAULT_BALL_BUDGET).unwrap();
    assert_eq!(a.sphere_sizes, b.sphere_sizes);
}

#[test]
fn monoid_counts_match_formula() {
    for d in 1..=6u64 {
        let c: Vec<i64> =
            counts(&reflection_quandle(d).unwrap(), 6, Exec::Parallel).iter().map(|&x| x as i64).collect();
        assert_eq!(monoid_growth_reflections(d).unwrap().expand(6).to_i64(), c, "d = {d}");
    }
}

#[test]
fn ball_examples() {
    let s2 = make_symmetric_group(2).unwrap();
    let b =
        group_ball_enumerate(&s2, &transposition_generators(&s2), 5, Exec::Sequential, DEFAULT_BALL_BUDGET).unwrap();
    assert_eq!(b.sphere_sizes, vec![1, 2, 2, 2, 2, 2]);
    let s3 = make_symmetric_group(3).unwrap();
    let b =
        group_ball_enumerate(&s3, &transposition_generators(&s3), 5, Exec::Sequential, DEFAULT_BALL_BUDGET).unwrap();
    assert_eq!(b.sphere_sizes, vec![1, 6, 8, 6, 6, 6]);
    let gens = full_conjugation_generators(&s3).unwrap();
    assert_eq!(gens.len(), 6);
    let b = group_ball_enumerate(&s3, &gens, 4, Exec::Parallel, DEFAULT_BALL_BUDGET).unwrap();
    assert_eq!(b.sphere_sizes, vec![1, 12, 48, 112, 198]);
}

#[test]
fn balls_match_closed_forms() {
    for d in 2..=4 {
        let g = make_symmetric_group(d).unwrap();
        let b =
            group_ball_enumerate(&g, &transposition_generators(&g), 7, Exec::Parallel, DEFAULT_BALL_BUDGET).unwrap();
        let expected = as_transpositions_group_gf(d).unwrap().expand(7).to_i64();
        assert_eq!(b.sphere_sizes.iter().map(|&x| x as i64).collect::<Vec<_>>(), expected, "d = {d}");
    }
    for d in 3..=8 {
        let g = make_dihedral_group(d).unwrap();
        let gens = reflection_generators(&g).unwrap();
        let b = group_ball_enumerate(&g, &gens, 7, Exec::Parallel, DEFAULT_BALL_BUDGET).unwrap();
        let expected = as_reflections_group_gf(d).unwrap().expand(7).to_i64();
        assert_eq!(b.sphere_sizes.iter().map(|&x| x as i64).collect::<Vec<_>>(), expected, "d = {d}");
    }
}

#[test]
fn spheres_become_group_order() {
    for d in 2..=4 {
        let g = make_symmetric_group(d).unwrap();
        let b =
            group_ball_enumerate(&g, &transposition_generators(&g), 14, Exec::Parallel, DEFAULT_BALL_BUDGET).unwrap();
        assert!(b.sphere_sizes[0] == 1);
        assert!(b.sphere_sizes[2 * d..].iter().all(|&s| s == g.order() as u64), "d = {d}");
    }
}

#[test]
fn ball_guards() {
    let g = make_symmetric_group(3).unwrap();
    let gens = transposition_generators(&g);
    assert!(group_ball_enumerate(&g, &gens, 200, Exec::Sequential, DEFAULT_BALL_BUDGET).is_err());
    assert!(matches!(
        group_ball_enumerate(&g, &gens, 10, Exec::Sequential, 5),
        Err(ybe_growth::Error::BudgetExceeded(_))
    ));
}
