use serde::{Deserialize, Serialize};

use super::permutation::{factorial, Permutation};
use crate::error::{Error, Result};

/// Groups up to this order keep a dense multiplication table.
pub const DENSE_LIMIT: usize = 1024;
/// Largest order accepted for user-supplied tables.
pub const TABLE_LIMIT: usize = 10_000;

#[derive(Clone, Debug)]
enum Kind {
    Symmetric { d: usize, perms: Vec<Permutation> },
    Dihedral { d: usize },
    Table,
}

/// A finite group on the indices `0..n` with identity `0`.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    n: usize,
    kind: Kind,
    mult: Option<Vec<u32>>,
    inv: Vec<u32>,
    labels: Vec<String>,
    order_keys: Option<Vec<Vec<u32>>>,
}

/// User-facing serialization of a group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub labels: Vec<String>,
    pub mult: Vec<Vec<usize>>,
}

impl FiniteGroupTable {
    /// The symmetric group on `d` points; element `i` is the permutation of lexicographic rank `i`.
    pub fn symmetric(d: usize) -> Result<Self> {
        if !(1..=8).contains(&d) {
            return Err(Error::SizeGuard(format!("symmetric group needs 1 <= d <= 8, got {d}")));
        }
        let n = factorial(d);
        let perms: Vec<Permutation> = (0..n).map(|r| Permutation::unrank(d, r)).collect();
        let inv = perms.iter().map(|p| p.inverse().rank() as u32).collect();
        let labels = perms.iter().map(|p| p.to_string()).collect();
        let order_keys = Some(perms.iter().map(|p| p.cycle_type()).collect());
        let mut g = FiniteGroupTable { n, kind: Kind::Symmetric { d, perms }, mult: None, inv, labels, order_keys };
        g.densify();
        Ok(g)
    }

    /// The dihedral group of the regular `d`-gon, acting on `Z_d` by affine maps.
    ///
    /// Index `k < d` is the rotation `x -> x + k`; index `d + m` is the
    /// reflection `x -> m - x`. For odd `d` this is the reflection fixing
    /// vertex `m / 2`.
    pub fn dihedral(d: usize) -> Result<Self> {
        if !(1..=1000).contains(&d) {
            return Err(Error::SizeGuard(format!("dihedral group needs 1 <= d <= 1000, got {d}")));
        }
        let n = 2 * d;
        let inv = (0..n).map(|i| if i < d { ((d - i) % d) as u32 } else { i as u32 }).collect();
        let mut labels = Vec::with_capacity(n);
        let mut keys = Vec::with_capacity(n);
        for k in 0..d {
            labels.push(if k == 0 { "1".to_string() } else { format!("r^{k}") });
            keys.push(vec![1 + k.min(d - k) as u32]);
        }
        for m in 0..d {
            labels.push(format!("s{m}"));
            keys.push(vec![1]);
        }
        let mut g = FiniteGroupTable { n, kind: Kind::Dihedral { d }, mult: None, inv, labels, order_keys: Some(keys) };
        g.densify();
        Ok(g)
    }

    /// A group from an explicit table, validated against the group axioms.
    ///
    /// Index 0 must be the identity. Associativity is checked exhaustively
    /// for `n <= 200` and on a deterministic sample of triples otherwise.
    pub fn from_table(labels: Vec<String>, mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 || n > TABLE_LIMIT {
            return Err(Error::SizeGuard(format!("group order {n} outside 1..={TABLE_LIMIT}")));
        }
        if labels.len() != n {
            return Err(Error::InvalidGroup("label count differs from table size".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &mult {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("entry {v} out of range")));
                }
                flat.push(v as u32);
            }
        }
        for a in 0..n {
            if flat[a] as usize != a || flat[a * n] as usize != a {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let row = &flat[a * n..(a + 1) * n];
            let mut seen = vec![false; n];
            for &v in row {
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
                }
            }
            inv[a] = row.iter().position(|&v| v == 0).expect("row is a permutation") as u32;
        }
        let g = FiniteGroupTable { n, kind: Kind::Table, mult: Some(flat), inv, labels, order_keys: None };
        g.check_associative()?;
        for a in 0..n {
            if g.mul(g.inv[a] as usize, a) != 0 {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
        }
        Ok(g)
    }

    pub fn from_json(j: &GroupJson) -> Result<Self> {
        Self::from_table(j.labels.clone(), j.mult.clone())
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            labels: self.labels.clone(),
            mult: (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect(),
        }
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.n;
        let mut triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if n <= 200 {
            Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
        } else {
            let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
            Box::new((0..2_000_000).map(move |_| {
                let mut next = || {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    (x % n as u64) as usize
                };
                (next(), next(), next())
            }))
        };
        if let Some((a, b, c)) = triples.find(|&(a, b, c)| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))) {
            return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
        }
        Ok(())
    }

    fn densify(&mut self) {
        if self.n <= DENSE_LIMIT {
            let n = self.n;
            let t: Vec<u32> = (0..n * n).map(|i| self.mul_lazy(i / n, i % n) as u32).collect();
            self.mult = Some(t);
        }
    }

    fn mul_lazy(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Symmetric { perms, .. } => perms[a].compose(&perms[b]).rank(),
            Kind::Dihedral { d } => {
                let d = *d;
                let (ea, ka) = if a < d { (1i64, a) } else { (-1, a - d) };
                let (eb, kb) = if b < d { (1i64, b) } else { (-1, b - d) };
                let k = (ea * kb as i64 + ka as i64).rem_euclid(d as i64) as usize;
                if ea * eb == 1 {
                    k
                } else {
                    d + k
                }
            }
            Kind::Table => unreachable!("tables are always dense"),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mult {
            Some(t) => t[a * self.n + b] as usize,
            None => self.mul_lazy(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_dense(&self) -> bool {
        self.mult.is_some()
    }

    /// Per-element ordering key used to number conjugacy classes, if the
    /// family has a conventional numbering.
    pub fn order_key(&self, a: usize) -> Option<&[u32]> {
        self.order_keys.as_ref().map(|k| k[a].as_slice())
    }

    /// The underlying permutation when this is a symmetric group.
    pub fn permutation(&self, a: usize) -> Option<&Permutation> {
        match &self.kind {
            Kind::Symmetric { perms, .. } => Some(&perms[a]),
            _ => None,
        }
    }

    pub fn symmetric_degree(&self) -> Option<usize> {
        match &self.kind {
            Kind::Symmetric { d, .. } => Some(*d),
            _ => None,
        }
    }

    pub fn dihedral_degree(&self) -> Option<usize> {
        match &self.kind {
            Kind::Dihedral { d } => Some(*d),
            _ => None,
        }
    }

    /// Index of a permutation in a symmetric group.
    pub fn index_of_permutation(&self, p: &Permutation) -> Option<usize> {
        (self.symmetric_degree() == Some(p.degree())).then(|| p.rank())
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        match &self.kind {
            Kind::Symmetric { d, .. } if *d >= 2 => {
                let d = *d;
                let s = Permutation::transposition(d, 0, 1).rank();
                let cyc: Vec<usize> = (0..d).map(|i| (i + 1) % d).collect();
                vec![s, Permutation::from_images(cyc).expect("cycle").rank()]
            }
            Kind::Dihedral { d } if *d >= 2 => vec![1 % d, *d],
            _ => {
                let mut gens = Vec::new();
                let mut inside = vec![false; self.n];
                inside[0] = true;
                for a in 0..self.n {
                    if !inside[a] {
                        gens.push(a);
                        for x in self.subgroup(&gens) {
                            inside[x] = true;
                        }
                    }
                }
                gens
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}
