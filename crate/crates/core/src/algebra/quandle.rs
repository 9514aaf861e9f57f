use serde::{Deserialize, Serialize};

use super::group::FiniteGroupTable;
use crate::error::{Error, Result};

/// Above this size self-distributivity is checked on a fixed sample of triples.
const EXHAUSTIVE_LIMIT: usize = 256;

/// A quandle `x ▷ y` on `0..n`, giving the solution `r(x, y) = (x ▷ y, x)`.
///
/// Construction validates the quandle axioms, which is equivalent to `r`
/// being a bijective non-degenerate solution of the braid relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleSolution {
    n: usize,
    op: Vec<u32>,
    labels: Vec<String>,
}

/// JSON form: `op[x][y] = x ▷ y`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuandleJson {
    pub op: Vec<Vec<usize>>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl QuandleSolution {
    pub fn new(op: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = op.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in &op {
            if row.len() != n {
                return Err(Error::InvalidQuandle("operation table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidQuandle(format!("entry {v} out of range")));
                }
                flat.push(v as u32);
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(Error::InvalidQuandle("label count differs from size".into())),
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let q = QuandleSolution { n, op: flat, labels };
        q.validate()?;
        Ok(q)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize, labels: Option<Vec<String>>) -> Result<Self> {
        Self::new((0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect(), labels)
    }

    pub fn from_json(j: &QuandleJson) -> Result<Self> {
        Self::new(j.op.clone(), j.labels.clone())
    }

    pub fn to_json(&self) -> QuandleJson {
        QuandleJson {
            op: (0..self.n).map(|x| (0..self.n).map(|y| self.op(x, y)).collect()).collect(),
            labels: Some(self.labels.clone()),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for x in 0..n {
            if self.op(x, x) != x {
                return Err(Error::InvalidQuandle(format!("{x} ▷ {x} != {x}")));
            }
            let mut seen = vec![false; n];
            for y in 0..n {
                if std::mem::replace(&mut seen[self.op(x, y)], true) {
                    return Err(Error::InvalidQuandle(format!("left translation by {x} is not bijective")));
                }
            }
        }
        let sd = |x: usize, y: usize, z: usize| self.op(x, self.op(y, z)) == self.op(self.op(x, y), self.op(x, z));
        if n <= EXHAUSTIVE_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !sd(x, y, z) {
                            return Err(Error::InvalidQuandle(format!("self-distributivity fails at ({x},{y},{z})")));
                        }
                    }
                }
            }
        } else {
            let mut s: u64 = 0x2545_F491_4F6C_DD1D;
            for _ in 0..1_000_000 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let (x, y, z) = ((s >> 16) as usize % n, (s >> 32) as usize % n, (s >> 48) as usize % n);
                if !sd(x, y, z) {
                    return Err(Error::InvalidQuandle(format!("self-distributivity fails at ({x},{y},{z})")));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.n + y] as usize
    }

    /// `r(x, y) = (x ▷ y, x)`.
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.op(x, y), x)
    }

    /// The unique `y` with `x ▷ y = z`.
    pub fn op_inverse(&self, x: usize, z: usize) -> usize {
        (0..self.n).find(|&y| self.op(x, y) == z).expect("left translations are bijective")
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|s| s == l)
    }

    /// `x ▷ (x ▷ y) = y` for all `x, y`.
    pub fn is_involutory(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.op(x, self.op(x, y)) == y))
    }

    /// Orbit index of each element under the inner automorphism group,
    /// orbits numbered by their minimal element.
    pub fn orbits(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if id[s] != usize::MAX {
                continue;
            }
            id[s] = next;
            let mut stack = vec![s];
            while let Some(y) = stack.pop() {
                for x in 0..self.n {
                    for z in [self.op(x, y), self.op_inverse(x, y)] {
                        if id[z] == usize::MAX {
                            id[z] = next;
                            stack.push(z);
                        }
                    }
                }
            }
            next += 1;
        }
        id
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Check the braid relation `(r×1)(1×r)(r×1) = (1×r)(r×1)(1×r)` on all triples.
    pub fn satisfies_braid_relation(&self) -> bool {
        let r1 = |(a, b, c): (usize, usize, usize)| {
            let (x, y) = self.r(a, b);
            (x, y, c)
        };
        let r2 = |(a, b, c): (usize, usize, usize)| {
            let (x, y) = self.r(b, c);
            (a, x, y)
        };
        (0..self.n).all(|a| (0..self.n).all(|b| (0..self.n).all(|c| r1(r2(r1((a, b, c)))) == r2(r1(r2((a, b, c)))))))
    }

    /// True if `map` is an isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &QuandleSolution, map: &[usize]) -> bool {
        map.len() == self.n
            && other.n == self.n
            && (0..self.n).all(|x| (0..self.n).all(|y| map[self.op(x, y)] == other.op(map[x], map[y])))
    }

    /// The same quandle with element `x` renamed `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<QuandleSolution> {
        let mut inv = vec![0; self.n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let labels = (0..self.n).map(|p| self.labels[inv[p]].clone()).collect();
        Self::from_fn(self.n, |a, b| perm[self.op(inv[a], inv[b])], Some(labels))
    }
}

/// Conjugation `x ▷ y = x y x⁻¹` restricted to `subset`, in the given order.
pub fn conjugation_solution(g: &FiniteGroupTable, subset: &[usize]) -> Result<QuandleSolution> {
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in subset.iter().enumerate() {
        if x >= g.order() || pos[x] != usize::MAX {
            return Err(Error::Invalid(format!("bad subset element {x}")));
        }
        pos[x] = i;
    }
    let n = subset.len();
    let mut op = vec![vec![0; n]; n];
    for (i, &x) in subset.iter().enumerate() {
        for (j, &y) in subset.iter().enumerate() {
            let z = g.conj(x, y);
            if pos[z] == usize::MAX {
                return Err(Error::InvalidQuandle(format!(
                    "subset not closed: {} ▷ {} = {}",
                    g.label(x),
                    g.label(y),
                    g.label(z)
                )));
            }
            op[i][j] = pos[z];
        }
    }
    let labels = subset.iter().map(|&x| g.label(x).to_string()).collect();
    QuandleSolution::new(op, Some(labels)).map_err(|e| Error::Internal(format!("conjugation solution invalid: {e}")))
}

/// `Z_d` with `x ▷ y = 2x - y mod d`.
pub fn reflection_solution(d: usize) -> Result<QuandleSolution> {
    if d == 0 {
        return Err(Error::Invalid("reflection solution needs d >= 1".into()));
    }
    QuandleSolution::from_fn(d, |x, y| (2 * x + d - y) % d, None)
}

/// Transpositions of `S_d` under conjugation, ordered lexicographically by
/// pair and labelled `(i,j)` with 1-based points.
pub fn transposition_solution(d: usize) -> Result<QuandleSolution> {
    let pairs = transposition_pairs(d);
    let index = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (a, b)).expect("pair exists")
    };
    let sigma = |(a, b): (usize, usize), x: usize| {
        if x == a {
            b
        } else if x == b {
            a
        } else {
            x
        }
    };
    let labels = pairs.iter().map(|&(a, b)| format!("({},{})", a + 1, b + 1)).collect();
    QuandleSolution::from_fn(
        pairs.len(),
        |x, y| {
            let (c, e) = pairs[y];
            index(sigma(pairs[x], c), sigma(pairs[x], e))
        },
        Some(labels),
    )
}

/// Pairs `(i, j)` with `i < j < d` in lexicographic order.
pub fn transposition_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}
