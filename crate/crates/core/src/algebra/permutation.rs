use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Permutation of `0..d`, stored by images. Products compose right to left:
/// `(a * b)(x) = a(b(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation { images: (0..d as u8).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d > 255 {
            return Err(Error::SizeGuard(format!("permutation degree {d} exceeds 255")));
        }
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return Err(Error::Invalid(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u8).collect() })
    }

    /// The transposition swapping `i` and `j` (0-based).
    pub fn transposition(d: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(d);
        p.images.swap(i, j);
        p
    }

    /// Product of cycles given with 0-based points.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..d).collect();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= d {
                    return Err(Error::Invalid(format!("point {a} out of range")));
                }
                img[a] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Cycles including fixed points, each starting at its minimum, ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Transposition length `d - c(g)`.
    pub fn length(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    /// Nontrivial cycle lengths in descending order.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).filter(|&l| l > 1).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Lexicographic rank among all permutations of the same degree.
    pub fn rank(&self) -> usize {
        let d = self.degree();
        let mut r = 0usize;
        let mut used = 0u64;
        for i in 0..d {
            let x = self.images[i] as usize;
            let smaller = (0..x).filter(|&y| used & (1 << y) == 0).count();
            r = r * (d - i) + smaller;
            used |= 1 << x;
        }
        r
    }

    pub fn unrank(d: usize, mut r: usize) -> Permutation {
        let mut digits = vec![0usize; d];
        for i in (0..d).rev() {
            let base = d - i;
            digits[i] = r % base;
            r /= base;
        }
        let mut avail: Vec<u8> = (0..d as u8).collect();
        let images = digits.into_iter().map(|k| avail.remove(k)).collect();
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_round_trip() {
        for d in 1..=5 {
            for r in 0..factorial(d) {
                assert_eq!(Permutation::unrank(d, r).rank(), r);
            }
        }
        assert_eq!(Permutation::identity(4).rank(), 0);
    }

    #[test]
    fn compose_right_to_left() {
        let a = Permutation::transposition(3, 0, 1);
        let b = Permutation::transposition(3, 1, 2);
        let ab = a.compose(&b);
        assert_eq!(ab.apply(2), 0);
        assert_eq!(ab.cycle_type(), vec![3]);
        assert_eq!(ab.to_string(), "(1 2 3)");
        assert_eq!(ab.length(), 2);
    }
}
