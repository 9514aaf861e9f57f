use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{conjugacy_classes, reflection_elements, transposition_elements, FiniteGroupTable};
use crate::error::{Error, Result};
use crate::exec::{map_slice, Exec};

/// Default cap on visited states.
pub const DEFAULT_BALL_BUDGET: u64 = 100_000_000;

/// Largest lattice rank a state key can hold.
pub const MAX_LATTICE_RANK: usize = 12;

/// A generator `(g, v)` of a subgroup of `G × Z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallGenerator {
    pub element: usize,
    pub lattice: Vec<i32>,
}

/// Sphere sizes of the Cayley graph with respect to generators and inverses.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallEnumeration {
    pub generators: Vec<BallGenerator>,
    pub radius: usize,
    pub sphere_sizes: Vec<u64>,
    pub states: u64,
}

type Key = u128;

fn encode(element: usize, v: &[i32]) -> Key {
    let mut k = element as u128;
    for (i, &c) in v.iter().enumerate() {
        k |= ((c as i8 as u8) as u128) << (32 + 8 * i);
    }
    k
}

fn decode(k: Key, rank: usize) -> (usize, Vec<i32>) {
    let e = (k & 0xffff_ffff) as usize;
    let v = (0..rank).map(|i| ((k >> (32 + 8 * i)) & 0xff) as u8 as i8 as i32).collect();
    (e, v)
}

/// Breadth-first search from `(1, 0)` in `G × Z^k` up to `radius`.
pub fn group_ball_enumerate(
    g: &FiniteGroupTable,
    gens: &[BallGenerator],
    radius: usize,
    exec: Exec,
    budget: u64,
) -> Result<BallEnumeration> {
    let rank = gens.first().map_or(0, |x| x.lattice.len());
    if gens.iter().any(|x| x.lattice.len() != rank || x.element >= g.order()) {
        return Err(Error::Invalid("generators must share one lattice rank and lie in the group".into()));
    }
    if rank > MAX_LATTICE_RANK || radius > 127 {
        return Err(Error::SizeGuard(format!("lattice rank {rank} or radius {radius} too large")));
    }
    let mut steps: Vec<(usize, Vec<i32>)> = Vec::with_capacity(2 * gens.len());
    for x in gens {
        steps.push((x.element, x.lattice.clone()));
        steps.push((g.inv(x.element), x.lattice.iter().map(|c| -c).collect()));
    }
    let start = encode(g.identity(), &vec![0; rank]);
    let mut seen: HashSet<Key> = HashSet::from([start]);
    let mut frontier = vec![start];
    let mut spheres = vec![1u64];
    for _ in 0..radius {
        let chunks: Vec<&[Key]> = frontier.chunks(1024).collect();
        let found: Vec<Vec<Key>> = map_slice(exec, &chunks, |chunk| {
            let mut out = Vec::with_capacity(chunk.len() * steps.len());
            for &k in chunk.iter() {
                let (e, v) = decode(k, rank);
                for (s, dv) in &steps {
                    let w: Vec<i32> = v.iter().zip(dv).map(|(a, b)| a + b).collect();
                    out.push(encode(g.mul(e, *s), &w));
                }
            }
            out
        });
        let mut next: Vec<Key> = found.into_iter().flatten().filter(|k| !seen.contains(k)).collect();
        next.sort_unstable();
        next.dedup();
        seen.extend(next.iter().copied());
        if seen.len() as u64 > budget {
            return Err(Error::BudgetExceeded(format!("ball search visited more than {budget} states")));
        }
        spheres.push(next.len() as u64);
        frontier = next;
    }
    Ok(BallEnumeration { generators: gens.to_vec(), radius, sphere_sizes: spheres, states: seen.len() as u64 })
}

/// `e_x ↦ (x, 1)` for the transpositions of `S_d`.
pub fn transposition_generators(g: &FiniteGroupTable) -> Vec<BallGenerator> {
    transposition_elements(g).into_iter().map(|x| BallGenerator { element: x, lattice: vec![1] }).collect()
}

/// `e_x ↦ (x, 1_orbit)` for the reflections of `D_d`; even `d` has two orbits.
pub fn reflection_generators(g: &FiniteGroupTable) -> Result<Vec<BallGenerator>> {
    let d = g.dihedral_degree().ok_or_else(|| Error::InvalidGroup("expected a dihedral group".into()))?;
    Ok(reflection_elements(g)
        .into_iter()
        .map(|x| {
            let lattice = if d % 2 == 0 {
                if (x - d) % 2 == 0 {
                    vec![1, 0]
                } else {
                    vec![0, 1]
                }
            } else {
                vec![1]
            };
            BallGenerator { element: x, lattice }
        })
        .collect())
}

/// `e_x ↦ (x, 1_class(x))` for every element, one coordinate per conjugacy class.
pub fn full_conjugation_generators(g: &FiniteGroupTable) -> Result<Vec<BallGenerator>> {
    let dec = conjugacy_classes(g)?;
    let c = dec.len();
    Ok((0..g.order())
        .map(|x| {
            let mut lattice = vec![0; c];
            lattice[dec.class_of(x)] = 1;
            BallGenerator { element: x, lattice }
        })
        .collect())
}
