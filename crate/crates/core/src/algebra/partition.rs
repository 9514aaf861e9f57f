use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set partition of `0..d`: blocks sorted internally and by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    d: usize,
    blocks: Vec<Vec<usize>>,
}

/// Union-find over `0..n` with path halving.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl SetPartition {
    pub fn new(d: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; d];
        for &x in blocks.iter().flatten() {
            if x >= d || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Invalid(format!("blocks are not a partition of 0..{d}")));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid(format!("blocks do not cover 0..{d}")));
        }
        Ok(Self::canonical(d, blocks))
    }

    fn canonical(d: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        blocks.iter_mut().for_each(|b| b.sort_unstable());
        blocks.sort();
        SetPartition { d, blocks }
    }

    pub fn discrete(d: usize) -> Self {
        SetPartition { d, blocks: (0..d).map(|i| vec![i]).collect() }
    }

    /// Components of the graph on `0..d` with the given edges.
    pub fn from_edges(d: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::new(d);
        edges.into_iter().for_each(|(a, b)| uf.union(a, b));
        Self::from_union_find(d, &mut uf)
    }

    fn from_union_find(d: usize, uf: &mut UnionFind) -> Self {
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); d];
        for x in 0..d {
            let r = uf.find(x);
            by_root[r].push(x);
        }
        Self::canonical(d, by_root)
    }

    pub fn ground_size(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// Block sizes in descending order.
    pub fn shape(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Finest common coarsening.
    pub fn join(&self, o: &SetPartition) -> Result<SetPartition> {
        if self.d != o.d {
            return Err(Error::GroundSetMismatch(self.d, o.d));
        }
        let mut uf = UnionFind::new(self.d);
        for b in self.blocks.iter().chain(&o.blocks) {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        Ok(Self::from_union_find(self.d, &mut uf))
    }
}

impl fmt::Display for SetPartition {
    /// 1-based, e.g. `{{1,2,3},{4,5}}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", bs.join(","))
    }
}

/// All set partitions of `0..d` via restricted growth strings.
pub fn enumerate_set_partitions(d: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut a = vec![0usize; d];
    fn rec(i: usize, max: usize, a: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        let d = a.len();
        if i == d {
            let k = a.iter().copied().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (x, &b) in a.iter().enumerate() {
                blocks[b].push(x);
            }
            out.push(SetPartition { d, blocks });
            return;
        }
        for b in 0..=max {
            a[i] = b;
            rec(i + 1, if b == max { max + 1 } else { max }, a, out);
        }
    }
    if d == 0 {
        return vec![SetPartition { d: 0, blocks: vec![] }];
    }
    a[0] = 0;
    rec(1, 1, &mut a, &mut out);
    out
}

/// Integer partitions of `d` as non-increasing part lists, in reverse
/// lexicographic order starting from `[d]`.
pub fn integer_partitions(d: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Number of set partitions of a `d`-set with block sizes `lambda`:
/// `d! / (∏ n_i! · ∏ μ_i!)` where `μ_i` counts parts equal to `i`.
pub fn integer_partition_multiplicity(lambda: &[usize], d: usize) -> Result<BigInt> {
    if lambda.iter().sum::<usize>() != d || lambda.contains(&0) {
        return Err(Error::Invalid(format!("{lambda:?} is not a partition of {d}")));
    }
    let fact = |n: usize| (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    let mut den = lambda.iter().fold(BigInt::one(), |acc, &p| acc * fact(p));
    let mut sorted = lambda.to_vec();
    sorted.sort_unstable();
    for run in sorted.chunk_by(|a, b| a == b) {
        den *= fact(run.len());
    }
    Ok(fact(d) / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let bell: Vec<usize> = (0..7).map(|d| enumerate_set_partitions(d).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn join_and_counts() {
        let p = SetPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let q = SetPartition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        assert!(p.join(&q).unwrap().is_full());
        assert!(p.join(&SetPartition::discrete(4)).is_err());
        assert_eq!(integer_partition_multiplicity(&[2, 2], 4).unwrap(), BigInt::from(3));
        assert_eq!(integer_partition_multiplicity(&[2, 1], 3).unwrap(), BigInt::from(3));
        assert_eq!(integer_partitions(4).len(), 5);
    }
}
