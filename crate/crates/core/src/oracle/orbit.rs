use std::collections::{HashSet, VecDeque};
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};

use crate::algebra::{QuandleSolution, Word};
use crate::error::{Error, Result};
use crate::exec::{for_range, Exec};

/// Default cap on the number of words of a single length.
pub const DEFAULT_ORBIT_BUDGET: u64 = 10_000_000;

const CHUNK: usize = 1 << 14;

/// Union-find over `0..n` whose roots are always the minimal member.
struct AtomicDsu {
    parent: Vec<AtomicU32>,
}

impl AtomicDsu {
    fn new(n: usize) -> Self {
        AtomicDsu { parent: (0..n as u32).map(AtomicU32::new).collect() }
    }

    fn find(&self, mut x: u32) -> u32 {
        loop {
            let p = self.parent[x as usize].load(Ordering::Acquire);
            if p == x {
                return x;
            }
            let gp = self.parent[p as usize].load(Ordering::Acquire);
            if gp != p {
                let _ = self.parent[x as usize].compare_exchange(p, gp, Ordering::AcqRel, Ordering::Relaxed);
            }
            x = p;
        }
    }

    fn union(&self, a: u32, b: u32) {
        let (mut a, mut b) = (a, b);
        loop {
            a = self.find(a);
            b = self.find(b);
            if a == b {
                return;
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if self.parent[hi as usize].compare_exchange(hi, lo, Ordering::AcqRel, Ordering::Relaxed).is_ok() {
                return;
            }
        }
    }
}

/// Orbits of the words of one length.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LengthOrbits {
    pub length: usize,
    pub count: u64,
    /// Lexicographically minimal word of each orbit, in increasing order.
    pub representatives: Vec<Word>,
    #[serde(skip)]
    orbit_of: Vec<u32>,
}

impl LengthOrbits {
    /// Orbit index of the word with the given code.
    pub fn orbit_of_code(&self, code: u64) -> usize {
        self.orbit_of[code as usize] as usize
    }
}

/// Braiding-move orbits of all words up to some length.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitEnumeration {
    pub alphabet: usize,
    pub max_length: usize,
    pub per_length_counts: Vec<u64>,
    pub levels: Vec<LengthOrbits>,
    /// First length skipped because it exceeded the budget.
    pub cutoff: Option<usize>,
}

impl OrbitEnumeration {
    /// Orbit index of `w` among words of its length.
    pub fn orbit_id(&self, w: &Word) -> Option<usize> {
        let level = self.levels.get(w.len())?;
        Some(level.orbit_of_code(w.encode(self.alphabet)))
    }

    pub fn representative(&self, length: usize, id: usize) -> Option<&Word> {
        self.levels.get(length)?.representatives.get(id)
    }

    pub fn is_complete(&self) -> bool {
        self.cutoff.is_none()
    }
}

fn orbits_of_length(sol: &QuandleSolution, len: usize, exec: Exec) -> LengthOrbits {
    let n = sol.size();
    let total = n.pow(len as u32);
    let dsu = AtomicDsu::new(total);
    let pow: Vec<usize> = (0..len).map(|i| n.pow((len - 1 - i) as u32)).collect();
    let chunks = total.div_ceil(CHUNK);
    for_range(exec, chunks, |c| {
        for code in c * CHUNK..((c + 1) * CHUNK).min(total) {
            for i in 0..len.saturating_sub(1) {
                let x = code / pow[i] % n;
                let y = code / pow[i + 1] % n;
                let (u, v) = sol.r(x, y);
                let next = code - x * pow[i] - y * pow[i + 1] + u * pow[i] + v * pow[i + 1];
                if next != code {
                    dsu.union(code as u32, next as u32);
                }
            }
        }
    });
    let mut orbit_of = vec![0u32; total];
    let mut representatives = Vec::new();
    for code in 0..total {
        let root = dsu.find(code as u32) as usize;
        if root == code {
            orbit_of[code] = representatives.len() as u32;
            representatives.push(Word::decode(code as u64, n, len));
        } else {
            orbit_of[code] = orbit_of[root];
        }
    }
    LengthOrbits { length: len, count: representatives.len() as u64, representatives, orbit_of }
}

/// Orbits of `X^n` under braiding moves for `n = 0..=max_length`.
///
/// Lengths whose word count exceeds `budget` are not computed; the result
/// then records the first skipped length in `cutoff`.
pub fn monoid_orbit_enumerate(sol: &QuandleSolution, max_length: usize, exec: Exec, budget: u64) -> OrbitEnumeration {
    let n = sol.size();
    let mut levels = Vec::new();
    let mut cutoff = None;
    for len in 0..=max_length {
        let words = (n as u128).checked_pow(len as u32);
        let fits = words.is_some_and(|w| w <= budget as u128 && w < u32::MAX as u128);
        if !fits {
            cutoff = Some(len);
            break;
        }
        levels.push(orbits_of_length(sol, len, exec));
    }
    OrbitEnumeration {
        alphabet: n,
        max_length,
        per_length_counts: levels.iter().map(|l| l.count).collect(),
        levels,
        cutoff,
    }
}

fn neighbours(sol: &QuandleSolution, w: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(2 * w.len());
    for i in 0..w.len().saturating_sub(1) {
        let (x, y) = (w[i], w[i + 1]);
        let (u, v) = sol.r(x, y);
        let mut f = w.to_vec();
        f[i] = u;
        f[i + 1] = v;
        out.push(f);
        let mut b = w.to_vec();
        b[i] = y;
        b[i + 1] = sol.op_inverse(y, x);
        out.push(b);
    }
    out
}

/// Whether `w2` is reachable from `w1` by braiding moves (bidirectional search).
pub fn orbit_equal(sol: &QuandleSolution, w1: &Word, w2: &Word, budget: u64) -> Result<bool> {
    if w1.len() != w2.len() {
        return Ok(false);
    }
    if w1 == w2 {
        return Ok(true);
    }
    let mut seen = [HashSet::new(), HashSet::new()];
    let mut front = [VecDeque::new(), VecDeque::new()];
    for (s, w) in [w1, w2].into_iter().enumerate() {
        seen[s].insert(w.letters().to_vec());
        front[s].push_back(w.letters().to_vec());
    }
    while !front[0].is_empty() && !front[1].is_empty() {
        let s = if front[0].len() <= front[1].len() { 0 } else { 1 };
        let layer: Vec<Vec<usize>> = front[s].drain(..).collect();
        for w in layer {
            for nb in neighbours(sol, &w) {
                if seen[1 - s].contains(&nb) {
                    return Ok(true);
                }
                if seen[s].insert(nb.clone()) {
                    front[s].push_back(nb);
                }
            }
        }
        if (seen[0].len() + seen[1].len()) as u64 > budget {
            return Err(Error::BudgetExceeded(format!("orbit search visited more than {budget} words")));
        }
    }
    Ok(false)
}

/// The full orbit of `w`, sorted.
pub fn orbit_of_word(sol: &QuandleSolution, w: &Word, budget: u64) -> Result<Vec<Word>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.letters().to_vec());
    queue.push_back(w.letters().to_vec());
    while let Some(x) = queue.pop_front() {
        for nb in neighbours(sol, &x) {
            if seen.insert(nb.clone()) {
                if seen.len() as u64 > budget {
                    return Err(Error::BudgetExceeded(format!("orbit larger than {budget} words")));
                }
                queue.push_back(nb);
            }
        }
    }
    let mut out: Vec<Word> = seen.into_iter().map(Word::new).collect();
    out.sort();
    Ok(out)
}
