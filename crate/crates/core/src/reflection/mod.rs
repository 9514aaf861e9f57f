//! The structure monoid of the reflection solutions `R_d` (dihedral quandles)
//! and `R_∞` (the integers with `x ▷ y = 2x − y`).

mod arith;
mod frs;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{reflection_solution, QuandleSolution, Word};
use crate::error::{Error, Result};

pub use arith::{divisors, gcd, gcd_all, lift_to_coprime, phi, prime_divisors, tau, triple_gcd_witness, Parity};
pub use frs::{
    frs_embed, frs_growth_gf, frs_image_membership, monoid_growth_reflections, monoid_growth_reflections_by_levels,
    FrsImage,
};

/// `Finite(d)` for `R_d`, `Infinite` for `R_∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modulus {
    Infinite,
    Finite(u64),
}

impl Modulus {
    pub fn finite(self) -> Option<i64> {
        match self {
            Modulus::Finite(d) => Some(d as i64),
            Modulus::Infinite => None,
        }
    }

    fn reduce(self, x: i64) -> i64 {
        match self {
            Modulus::Finite(d) => x.rem_euclid(d as i64),
            Modulus::Infinite => x,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Infinite => write!(f, "inf"),
            Modulus::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A word `e_{a_1} … e_{a_n}`; over `R_d` the letters lie in `0..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReflectionWord {
    modulus: Modulus,
    letters: Vec<i64>,
}

impl ReflectionWord {
    /// Letters are reduced modulo `d` in the finite case.
    pub fn new(modulus: Modulus, letters: Vec<i64>) -> Result<Self> {
        if modulus == Modulus::Finite(0) {
            return Err(Error::Invalid("R_d needs d >= 1".into()));
        }
        let letters = letters.into_iter().map(|x| modulus.reduce(x)).collect();
        Ok(ReflectionWord { modulus, letters })
    }

    pub fn infinite(letters: Vec<i64>) -> Self {
        ReflectionWord { modulus: Modulus::Infinite, letters }
    }

    pub fn finite(d: u64, letters: Vec<i64>) -> Result<Self> {
        Self::new(Modulus::Finite(d), letters)
    }

    /// Comma-separated letters, e.g. `0,-1,3`.
    pub fn parse(modulus: Modulus, s: &str) -> Result<Self> {
        let s = s.trim();
        let letters = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad letter {x:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(modulus, letters)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &ReflectionWord) -> Result<ReflectionWord> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.to_string(), other.modulus.to_string()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(ReflectionWord { modulus: self.modulus, letters })
    }

    /// `e_a e_b → e_{2a−b} e_a` at positions `i, i+1`.
    pub fn braid_at(&self, i: usize) -> ReflectionWord {
        let mut w = self.clone();
        let (a, b) = (w.letters[i], w.letters[i + 1]);
        w.letters[i] = self.modulus.reduce(2 * a - b);
        w.letters[i + 1] = a;
        w
    }

    /// `e_a e_b → e_b e_{2b−a}` at positions `i, i+1`.
    pub fn unbraid_at(&self, i: usize) -> ReflectionWord {
        let mut w = self.clone();
        let (a, b) = (w.letters[i], w.letters[i + 1]);
        w.letters[i] = b;
        w.letters[i + 1] = self.modulus.reduce(2 * b - a);
        w
    }

    /// The same word over the finite solution `reflection_solution(d)`.
    pub fn to_word(&self) -> Result<Word> {
        match self.modulus {
            Modulus::Finite(_) => Ok(Word::new(self.letters.iter().map(|&x| x as usize).collect())),
            Modulus::Infinite => Err(Error::Invalid("R_inf words have no finite encoding".into())),
        }
    }

    pub fn from_word(d: u64, w: &Word) -> Result<Self> {
        Self::finite(d, w.letters().iter().map(|&x| x as i64).collect())
    }

    /// `e_0e_{-1}e_3` notation; the empty word prints as `1`.
    pub fn pretty(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let a = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == a {
                j += 1;
            }
            if (0..10).contains(&a) {
                s += &format!("e_{a}");
            } else {
                s += &format!("e_{{{a}}}");
            }
            if j - i > 1 {
                s += &format!("^{}", j - i);
            }
            i = j;
        }
        s
    }
}

impl fmt::Display for ReflectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for ReflectionWord {
    type Err = Error;

    /// Parses a word over `R_∞`.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(Modulus::Infinite, s)
    }
}

/// The reflection solution `R_d` as a quandle.
pub fn reflection_quandle(d: u64) -> Result<QuandleSolution> {
    reflection_solution(d as usize)
}

/// Orbit invariants of a word.
///
/// `weight` is the alternating sum `a_1 − a_2 + a_3 − …` (reduced mod `d`);
/// `density` is the gcd of consecutive differences (and of `d`), zero for a
/// frozen word over `R_∞`; `anchor` is the smallest residue of a letter modulo
/// the density (the letter itself when the density is zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantTuple {
    pub modulus: Modulus,
    pub length: u64,
    pub weight: i64,
    pub density: u64,
    pub anchor: i64,
    pub even: u64,
    pub odd: u64,
    pub ess_even: u64,
    pub ess_odd: u64,
}

impl InvariantTuple {
    /// `d / density`, the modulus of the essentialisation (`None` over `R_∞`).
    pub fn essential_modulus(&self) -> Option<u64> {
        match self.modulus {
            Modulus::Finite(d) => Some(d / self.density),
            Modulus::Infinite => None,
        }
    }

    /// A complete invariant of the element.
    pub fn key(&self) -> (u64, i64, u64, i64, u64, u64) {
        let parity_free = matches!(self.essential_modulus(), Some(m) if m % 2 == 1);
        if parity_free || self.length == 0 {
            (self.length, self.weight, self.density, self.anchor, 0, 0)
        } else {
            (self.length, self.weight, self.density, self.anchor, self.ess_even, self.ess_odd)
        }
    }
}

fn alternating_sum(letters: &[i64]) -> i64 {
    letters.iter().enumerate().map(|(i, &a)| if i % 2 == 0 { a } else { -a }).sum()
}

fn parity_counts(letters: &[i64]) -> (u64, u64) {
    let odd = letters.iter().filter(|x| x.rem_euclid(2) == 1).count() as u64;
    (letters.len() as u64 - odd, odd)
}

/// Orbit invariants of `w`.
pub fn invariants(w: &ReflectionWord) -> InvariantTuple {
    let letters = &w.letters;
    let (even, odd) = parity_counts(letters);
    let diffs = letters.windows(2).map(|p| p[1] - p[0]);
    let (weight, density, anchor, ess) = match w.modulus {
        Modulus::Infinite => {
            let deg = gcd_all(diffs);
            let weight = alternating_sum(letters);
            if letters.is_empty() {
                (0, 0, 0, (0, 0))
            } else if deg == 0 {
                (weight, 0, letters[0], (even, odd))
            } else {
                let alpha = letters[0].rem_euclid(deg);
                let ess: Vec<i64> = letters.iter().map(|&x| (x - alpha) / deg).collect();
                (weight, deg as u64, alpha, parity_counts(&ess))
            }
        }
        Modulus::Finite(d) => {
            let d = d as i64;
            let weight = alternating_sum(letters).rem_euclid(d);
            if letters.is_empty() {
                (0, d as u64, 0, (0, 0))
            } else {
                let deg = gcd(d, gcd_all(diffs));
                let alpha = letters[0].rem_euclid(deg);
                let dd = d / deg;
                let ess = if dd % 2 == 0 {
                    let e: Vec<i64> = letters.iter().map(|&x| (x - alpha) / deg).collect();
                    parity_counts(&e)
                } else {
                    (letters.len() as u64, 0)
                };
                (weight, deg as u64, alpha, ess)
            }
        }
    };
    InvariantTuple {
        modulus: w.modulus,
        length: letters.len() as u64,
        weight,
        density,
        anchor,
        even,
        odd,
        ess_even: ess.0,
        ess_odd: ess.1,
    }
}

/// The essentialisation `x ↦ (x − α)/deg`, a full word over `R_{d/deg}` (or
/// over `R_∞`). Frozen `R_∞` words have none.
pub fn essentialise(w: &ReflectionWord) -> Result<ReflectionWord> {
    let inv = invariants(w);
    if w.letters.is_empty() {
        return Ok(w.clone());
    }
    if inv.density == 0 {
        return Err(Error::Invalid(format!("{} is frozen and has no essentialisation", w.pretty())));
    }
    let deg = inv.density as i64;
    let letters = w.letters.iter().map(|&x| (x - inv.anchor) / deg).collect();
    let modulus = match w.modulus {
        Modulus::Finite(d) => Modulus::Finite(d / inv.density),
        Modulus::Infinite => Modulus::Infinite,
    };
    Ok(ReflectionWord { modulus, letters })
}

/// Whether the density of `w` is 1 (a full word).
pub fn is_full(w: &ReflectionWord) -> bool {
    invariants(w).density == 1
}

/// The index `b` with `w · e_a = e_b · w`, namely `(−1)^{l(w)} a + 2ω(w)`.
pub fn push_through(w: &ReflectionWord, a: i64) -> i64 {
    let sign = if w.len().is_multiple_of(2) { 1 } else { -1 };
    w.modulus.reduce(sign * a + 2 * alternating_sum(&w.letters))
}

/// Density of the product of two elements given their invariants.
pub fn density_of_product(v: &InvariantTuple, w: &InvariantTuple) -> Result<u64> {
    if v.modulus != w.modulus {
        return Err(Error::ModulusMismatch(v.modulus.to_string(), w.modulus.to_string()));
    }
    if v.length == 0 {
        return Ok(w.density);
    }
    if w.length == 0 {
        return Ok(v.density);
    }
    Ok(gcd_all([v.density as i64, w.density as i64, v.anchor - w.anchor]) as u64)
}

/// Shape of a normal form, in essential coordinates where relevant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum NormalShape {
    Empty,
    /// `e_a^n`.
    Frozen {
        letter: i64,
        power: u64,
    },
    /// `e_a e_b`.
    Pair {
        first: i64,
        second: i64,
    },
    /// `e_s^2 e_c`.
    Triple {
        square: i64,
        last: i64,
    },
    /// `e_0^k e_1^l e_c` in essential coordinates.
    Standard {
        k: u64,
        l: u64,
        c: i64,
    },
}

/// A canonical representative together with the invariants it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub word: ReflectionWord,
    pub shape: NormalShape,
    pub invariants: InvariantTuple,
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word.pretty())
    }
}

/// `e_0^k e_1^l e_c` in a full setting, from the parity counts and weight.
/// Prefers even `c` when both parities fit.
fn standard_parameters(weight: i64, even: u64, odd: u64) -> (u64, u64, i64) {
    let c_for = |k: u64, l: u64| {
        let lodd = if l % 2 == 1 {
            if k.is_multiple_of(2) {
                1
            } else {
                -1
            }
        } else {
            0
        };
        let s = if (k + l).is_multiple_of(2) { 1 } else { -1 };
        s * (weight - lodd)
    };
    if even >= 2 && odd >= 1 {
        let (k, l) = (even - 1, odd);
        (k, l, c_for(k, l))
    } else {
        let (k, l) = (even, odd - 1);
        (k, l, c_for(k, l))
    }
}

fn standard_word(k: u64, l: u64, c: i64) -> Vec<i64> {
    let mut v = vec![0; k as usize];
    v.extend(std::iter::repeat_n(1, l as usize));
    v.push(c);
    v
}

/// Canonical representative of the element of `w`.
///
/// Over `R_∞`: frozen words stay as they are, length 2 gives `e_α e_{α−ω}`,
/// length 3 gives `e_{ω+deg}^2 e_ω`, and longer words give
/// `e_α^k e_{α+deg}^l e_{α+c·deg}` with `k, l > 0` (even `c` when there is a
/// choice). Over `R_d` the same shapes are used on the essentialisation in
/// `R_{d/deg}`; when `d/deg` is odd the long form has `l = 1`.
pub fn normal_form(w: &ReflectionWord) -> NormalForm {
    let inv = invariants(w);
    let n = w.len() as u64;
    let modulus = w.modulus;
    let done = |letters: Vec<i64>, shape: NormalShape| NormalForm {
        word: ReflectionWord::new(modulus, letters).expect("valid modulus"),
        shape,
        invariants: inv,
    };
    if n == 0 {
        return done(Vec::new(), NormalShape::Empty);
    }
    let frozen = match modulus {
        Modulus::Infinite => inv.density == 0,
        Modulus::Finite(d) => inv.density == d,
    };
    if frozen {
        let a = w.letters[0];
        return done(vec![a; n as usize], NormalShape::Frozen { letter: a, power: n });
    }
    let deg = inv.density as i64;
    let alpha = inv.anchor;
    let ess_mod = inv.essential_modulus().map(|m| m as i64);
    let red = |x: i64| match ess_mod {
        Some(m) => x.rem_euclid(m),
        None => x,
    };
    let lift = |x: i64| modulus.reduce(alpha + deg * x);
    let ess = essentialise(w).expect("not frozen");
    let wbar = red(alternating_sum(&ess.letters));
    match n {
        2 => {
            let (a, b) = (0, red(-wbar));
            done(vec![lift(a), lift(b)], NormalShape::Pair { first: lift(a), second: lift(b) })
        }
        3 => {
            let (s, c) = (red(wbar + 1), wbar);
            done(vec![lift(s), lift(s), lift(c)], NormalShape::Triple { square: lift(s), last: lift(c) })
        }
        _ => {
            let (k, l, c) = match ess_mod {
                Some(m) if m % 2 == 1 => {
                    let k = n - 2;
                    let c = if k % 2 == 1 { 1 + wbar } else { 1 - wbar };
                    (k, 1, c.rem_euclid(m))
                }
                _ => {
                    let (k, l, c) = standard_parameters(wbar, inv.ess_even, inv.ess_odd);
                    (k, l, red(c))
                }
            };
            let letters = standard_word(k, l, c).into_iter().map(lift).collect();
            done(letters, NormalShape::Standard { k, l, c })
        }
    }
}

/// Whether two words define the same monoid element.
pub fn elements_equal(v: &ReflectionWord, w: &ReflectionWord) -> Result<bool> {
    if v.modulus != w.modulus {
        return Err(Error::ModulusMismatch(v.modulus.to_string(), w.modulus.to_string()));
    }
    Ok(invariants(v).key() == invariants(w).key())
}
