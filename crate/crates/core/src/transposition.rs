//! The structure monoid of the transposition solution `T_d`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    integer_partition_multiplicity, integer_partitions, transposition_pairs, Permutation, SetPartition, UnionFind, Word,
};
use crate::error::{Error, Result};
use crate::series::{BivariateSeries, Polynomial, RationalGf, Q};

/// Largest `d` accepted by [`monoid_growth_transpositions`].
pub const MAX_MONOID_DEGREE: usize = 12;

/// A word in transpositions `e_(i,j)` over `0..d`; pairs are stored with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TranspositionWord {
    d: usize,
    letters: Vec<(usize, usize)>,
}

impl TranspositionWord {
    pub fn new(d: usize, letters: Vec<(usize, usize)>) -> Result<Self> {
        let letters = letters
            .into_iter()
            .map(|(a, b)| {
                if a == b || a >= d || b >= d {
                    Err(Error::Invalid(format!("bad transposition ({},{}) for d = {d}", a + 1, b + 1)))
                } else {
                    Ok((a.min(b), a.max(b)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TranspositionWord { d, letters })
    }

    pub fn empty(d: usize) -> Self {
        TranspositionWord { d, letters: Vec::new() }
    }

    /// Parse `e_(1,2)e_(2,3)^2` style input with 1-based points.
    pub fn parse(d: usize, s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches("e_").trim_start();
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Invalid(format!("expected '(' in {s:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Invalid(format!("unclosed '(' in {s:?}")))?;
            let (a, b) =
                open[..close].split_once(',').ok_or_else(|| Error::Invalid(format!("expected a pair in {s:?}")))?;
            let pt = |x: &str| -> Result<usize> {
                let v: usize = x.trim().parse().map_err(|_| Error::Invalid(format!("bad point {x:?}")))?;
                v.checked_sub(1).ok_or_else(|| Error::Invalid("points are 1-based".into()))
            };
            let pair = (pt(a)?, pt(b)?);
            rest = open[close + 1..].trim_start();
            let mut times = 1;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                times = r[..end].parse().map_err(|_| Error::Invalid(format!("bad exponent in {s:?}")))?;
                rest = r[end..].trim_start();
            }
            letters.extend(std::iter::repeat_n(pair, times));
            rest = rest.trim_start_matches(['*', ',', ' ']);
        }
        Self::new(d, letters)
    }

    /// Convert from a word over [`crate::algebra::transposition_solution`] indices.
    pub fn from_word(d: usize, w: &Word) -> Result<Self> {
        let pairs = transposition_pairs(d);
        let letters = w
            .letters()
            .iter()
            .map(|&x| pairs.get(x).copied().ok_or_else(|| Error::Invalid(format!("letter {x} out of range"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(TranspositionWord { d, letters })
    }

    pub fn to_word(&self) -> Word {
        let pairs = transposition_pairs(self.d);
        Word(self.letters.iter().map(|p| pairs.iter().position(|q| q == p).expect("valid pair")).collect())
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn letters(&self) -> &[(usize, usize)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, o: &TranspositionWord) -> Result<Self> {
        if self.d != o.d {
            return Err(Error::GroundSetMismatch(self.d, o.d));
        }
        Ok(TranspositionWord { d: self.d, letters: self.letters.iter().chain(&o.letters).copied().collect() })
    }

    /// Product of the letters, composed right to left.
    pub fn permutation(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.d), |acc, &(a, b)| acc.compose(&Permutation::transposition(self.d, a, b)))
    }
}

impl fmt::Display for TranspositionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.letters.len() {
            let p = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == p {
                j += 1;
            }
            write!(f, "e_({},{})", p.0 + 1, p.1 + 1)?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for TranspositionWord {
    type Err = Error;
    /// Parses with `d` inferred as the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let probe = TranspositionWord::parse(usize::MAX, s)?;
        let d = probe.letters.iter().map(|p| p.1 + 1).max().unwrap_or(0);
        TranspositionWord::new(d, probe.letters)
    }
}

/// Image of a nonempty word in `S_d × N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FtsImage {
    pub perm: Permutation,
    pub length: usize,
}

/// Connected components of the graph with an edge `{i, j}` per letter.
pub fn word_partition(w: &TranspositionWord) -> SetPartition {
    SetPartition::from_edges(w.d, w.letters.iter().copied())
}

/// `(product of letters, length)`; constant on braiding orbits.
pub fn fts_embed(w: &TranspositionWord) -> Result<FtsImage> {
    if w.is_empty() {
        return Err(Error::Invalid("the empty word has no image".into()));
    }
    Ok(FtsImage { perm: w.permutation(), length: w.len() })
}

/// Whether `(g, m)` is the image of a full word of length `m`.
pub fn fts_image_membership(g: &Permutation, m: usize, d: usize) -> bool {
    if g.degree() != d {
        return false;
    }
    if d <= 1 {
        return m == 0;
    }
    let l = g.length();
    m + l >= 2 * (d - 1) && m % 2 == l % 2
}

/// Canonical minimal factorization: each cycle `(a_1 … a_k)`, `a_1` minimal,
/// becomes `(a_1 a_2)(a_2 a_3)…`, cycles in order of their minima.
pub fn canonical_factorization(g: &Permutation) -> Vec<(usize, usize)> {
    g.cycles().iter().flat_map(|c| c.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect::<Vec<_>>()).collect()
}

/// Normal form of a full element on the sorted point set `pts`.
fn normal_form_on(pts: &[usize], g: &Permutation, m: usize) -> Vec<(usize, usize)> {
    let k = pts.len();
    if k <= 1 {
        return Vec::new();
    }
    let u: Vec<(usize, usize)> =
        canonical_factorization(g).into_iter().filter(|(a, _)| pts.binary_search(a).is_ok()).collect();
    let pos = |x: usize| pts.binary_search(&x).expect("point in block");
    let mut uf = UnionFind::new(k);
    for &(a, b) in &u {
        uf.union(pos(a), pos(b));
    }
    let mut out = Vec::with_capacity(m);
    let mut squares = (m - u.len()) / 2;
    for j in 0..k - 1 {
        if uf.find(j) != uf.find(j + 1) {
            uf.union(j, j + 1);
            out.push((pts[j], pts[j + 1]));
            out.push((pts[j], pts[j + 1]));
            squares -= 1;
        }
    }
    for _ in 0..squares {
        out.push((pts[k - 2], pts[k - 1]));
        out.push((pts[k - 2], pts[k - 1]));
    }
    out.extend(u);
    out
}

/// The canonical full word with image `(g, m)`.
pub fn fts_normal_form(g: &Permutation, m: usize, d: usize) -> Result<TranspositionWord> {
    if !fts_image_membership(g, m, d) {
        return Err(Error::Invalid(format!("({g}, {m}) is not in the image for d = {d}")));
    }
    let pts: Vec<usize> = (0..d).collect();
    Ok(TranspositionWord { d, letters: normal_form_on(&pts, g, m) })
}

/// Canonical representative of any word: per-block normal forms, blocks by minimum.
pub fn transposition_normal_form(w: &TranspositionWord) -> TranspositionWord {
    let part = word_partition(w);
    let g = w.permutation();
    let mut letters = Vec::with_capacity(w.len());
    for block in part.blocks() {
        let m = w.letters.iter().filter(|(a, _)| block.binary_search(a).is_ok()).count();
        letters.extend(normal_form_on(block, &g, m));
    }
    TranspositionWord { d: w.d, letters }
}

/// `t^{d−2}·∏_{k=0}^{d−1}(t+k)/(1−t²)`, and `1` for `d = 1`.
pub fn fts_growth_gf(d: usize) -> RationalGf {
    if d <= 1 {
        return RationalGf::one();
    }
    let num = (0..d as i64).fold(Polynomial::one().shift(d - 2), |acc, k| &acc * &Polynomial::from_ints(&[k, 1]));
    RationalGf::new(num, Polynomial::from_ints(&[1, 0, -1])).expect("valid").reduced()
}

/// Growth series of the structure monoid of `T_d`.
pub fn monoid_growth_transpositions(d: usize) -> Result<RationalGf> {
    if !(1..=MAX_MONOID_DEGREE).contains(&d) {
        return Err(Error::SizeGuard(format!("d must be in 1..={MAX_MONOID_DEGREE}, got {d}")));
    }
    let mut total = RationalGf::zero();
    for lambda in integer_partitions(d) {
        let mult = integer_partition_multiplicity(&lambda, d)?;
        let term = lambda.iter().fold(RationalGf::one(), |acc, &p| &acc * &fts_growth_gf(p));
        total = &total + &term.scale(&BigRational::from_integer(mult));
    }
    Ok(total.reduced())
}

/// `exp(((1−tx)^{−t} − 1 − t⁴x) / (t²(1−t²)))` truncated at `t^order_t`, `x^order_x`.
pub fn egf_transposition_monoids(order_t: usize, order_x: usize) -> Result<BivariateSeries> {
    let b = BivariateSeries::binomial(order_t + 2, order_x);
    let mut inner = BivariateSeries::zero(order_t, order_x);
    for j in 0..=order_x {
        let mut col: Vec<Q> = (0..=order_t + 2).map(|i| b.coeff(i, j)).collect();
        if j == 0 {
            col[0] -= Q::one();
        }
        if j == 1 && order_t + 2 >= 4 {
            col[4] -= Q::one();
        }
        if !col[0].is_zero() || !col[1].is_zero() {
            return Err(Error::Internal(format!("x^{j} column not divisible by t^2")));
        }
        let mut acc = [Q::zero(), Q::zero()];
        for i in 0..=order_t {
            acc[i % 2] += &col[i + 2];
            inner.set(i, j, acc[i % 2].clone());
        }
    }
    inner.exp()
}

/// `d!·[x^d]` of the exponential generating function, as a series in `t`.
pub fn egf_coefficient(egf: &BivariateSeries, d: usize) -> crate::series::TruncatedSeries {
    let fact: BigInt = (1..=d).fold(BigInt::one(), |acc, k| acc * k);
    egf.x_coefficient(d).scale(&BigRational::from_integer(fact))
}

/// `p(ab) = p(a) ∨ p(b)`.
pub fn partition_of_product(a: &TranspositionWord, b: &TranspositionWord) -> Result<SetPartition> {
    word_partition(a).join(&word_partition(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w = TranspositionWord::parse(5, "e_(1,2)e_(2,3)e_(4,5)e_(1,2)").unwrap();
        assert_eq!(word_partition(&w).to_string(), "{{1,2,3},{4,5}}");
        let p = TranspositionWord::parse(3, "e_(2,3)^2 e_(1,2)").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "e_(2,3)^2e_(1,2)");
        assert!(TranspositionWord::parse(3, "e_(1,4)").is_err());
    }

    #[test]
    fn normal_forms() {
        let d3 = |s: &str| TranspositionWord::parse(3, s).unwrap();
        let t12 = Permutation::transposition(3, 0, 1);
        assert_eq!(fts_normal_form(&t12, 3, 3).unwrap(), d3("e_(2,3)^2e_(1,2)"));
        assert_eq!(fts_normal_form(&Permutation::identity(3), 4, 3).unwrap(), d3("e_(1,2)^2e_(2,3)^2"));
        assert_eq!(
            fts_normal_form(&Permutation::identity(2), 4, 2).unwrap(),
            TranspositionWord::parse(2, "e_(1,2)^4").unwrap()
        );
        assert!(fts_normal_form(&Permutation::identity(3), 2, 3).is_err());
    }

    #[test]
    fn growth_small() {
        assert_eq!(fts_growth_gf(2), RationalGf::from_ints(&[0, 1], &[1, -1]).unwrap());
        assert_eq!(monoid_growth_transpositions(2).unwrap(), RationalGf::geometric());
        assert_eq!(monoid_growth_transpositions(3).unwrap().expand(5).to_i64(), vec![1, 3, 5, 6, 6, 6]);
    }
}
