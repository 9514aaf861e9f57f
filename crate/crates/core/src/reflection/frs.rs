//! Full elements of the structure monoid of `R_d` and growth series.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::arith::{divisors, gcd, phi, tau};
use super::{invariants, Modulus, ReflectionWord};
use crate::error::{Error, Result};
use crate::series::{Polynomial, RationalGf};

/// Image of a full element under the injective invariant map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FrsImage {
    /// `d = 1`: the length.
    Trivial { length: u64 },
    /// Odd `d > 1`: weight and length.
    Odd { weight: i64, length: u64 },
    /// Even `d`: weight and the even/odd letter counts.
    Even { weight: i64, even: u64, odd: u64 },
}

/// Invariant image of a full word over `R_d`.
pub fn frs_embed(w: &ReflectionWord) -> Result<FrsImage> {
    let Modulus::Finite(d) = w.modulus() else {
        return Err(Error::Invalid("full elements are defined over R_d".into()));
    };
    let inv = invariants(w);
    if w.is_empty() || inv.density != 1 {
        return Err(Error::Invalid(format!("{} is not a full word over R_{d}", w.pretty())));
    }
    Ok(if d == 1 {
        FrsImage::Trivial { length: inv.length }
    } else if d % 2 == 1 {
        FrsImage::Odd { weight: inv.weight, length: inv.length }
    } else {
        FrsImage::Even { weight: inv.weight, even: inv.even, odd: inv.odd }
    })
}

/// Whether `img` is the image of some full element of `R_d`.
pub fn frs_image_membership(img: &FrsImage, d: u64) -> bool {
    let d64 = d as i64;
    let unit = |m: i64| gcd(m, d64) == 1;
    match *img {
        FrsImage::Trivial { length } => d == 1 && length >= 1,
        FrsImage::Odd { weight, length } => {
            d > 1 && d % 2 == 1 && (0..d64).contains(&weight) && (length >= 3 || (length == 2 && unit(weight)))
        }
        FrsImage::Even { weight, even, odd } => {
            if !d.is_multiple_of(2) || !(0..d64).contains(&weight) || even == 0 || odd == 0 {
                return false;
            }
            if even == 1 && odd == 1 {
                unit(weight)
            } else {
                (odd as i64 - weight).rem_euclid(2) == 0
            }
        }
    }
}

/// Growth series of the full elements of the structure monoid of `R_d`.
pub fn frs_growth_gf(d: u64) -> Result<RationalGf> {
    if d == 0 {
        return Err(Error::Invalid("R_d needs d >= 1".into()));
    }
    let f = phi(d) as i64;
    let d = d as i64;
    let gf = if d == 1 {
        RationalGf::from_ints(&[0, 1], &[1, -1])?
    } else if d % 2 == 1 {
        RationalGf::from_ints(&[0, 0, f, d - f], &[1, -1])?
    } else {
        let h = d / 2;
        // φt²(1−t)² + h t³(2−t)
        let num = &Polynomial::from_ints(&[0, 0, f, -2 * f, f]) + &Polynomial::from_ints(&[0, 0, 0, 2 * h, -h]);
        RationalGf::new(num, Polynomial::from_ints(&[1, -2, 1]))?
    };
    Ok(gf.reduced())
}

/// Growth series of the structure monoid of `R_d`, in closed form.
pub fn monoid_growth_reflections(d: u64) -> Result<RationalGf> {
    if d == 0 {
        return Err(Error::Invalid("R_d needs d >= 1".into()));
    }
    let s: BigRational =
        divisors(d).into_iter().map(|c| BigRational::new((phi(c) as i64).into(), (c as i64).into())).sum();
    let t2 = Polynomial::monomial(s * BigRational::from_integer((d as i64).into()), 2);
    let d64 = d as i64;
    let inner = &RationalGf::from_poly(&Polynomial::from_ints(&[1, d64]) + &t2)
        + &RationalGf::from_ints(&[0, 0, 0, d64 * tau(d, 1) as i64], &[1, -1])?;
    let quart = RationalGf::new(
        Polynomial::from_ints(&[0, 0, 0, 0, d64 * tau(d, 2) as i64]),
        Polynomial::from_ints(&[2, -4, 2]),
    )?;
    Ok((&inner + &quart).reduced())
}

/// The same series assembled level by level: `1 + Σ_{c | d} (d/c)·FRS_c`.
pub fn monoid_growth_reflections_by_levels(d: u64) -> Result<RationalGf> {
    if d == 0 {
        return Err(Error::Invalid("R_d needs d >= 1".into()));
    }
    let mut total = RationalGf::one();
    for c in divisors(d) {
        let level = frs_growth_gf(c)?.scale(&BigRational::from_integer(((d / c) as i64).into()));
        total = &total + &level;
    }
    Ok(total.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_routes_agree() {
        for d in 1..=30 {
            assert_eq!(
                monoid_growth_reflections(d).unwrap(),
                monoid_growth_reflections_by_levels(d).unwrap(),
                "d = {d}"
            );
        }
    }

    #[test]
    fn small_values() {
        let s = frs_growth_gf(3).unwrap().expand(5).to_i64();
        assert_eq!(s, vec![0, 0, 2, 3, 3, 3]);
        let s = frs_growth_gf(4).unwrap().expand(5).to_i64();
        assert_eq!(s, vec![0, 0, 2, 4, 6, 8]);
        let s = monoid_growth_reflections(1).unwrap().expand(3).to_i64();
        assert_eq!(s, vec![1, 1, 1, 1]);
    }

    #[test]
    fn membership() {
        assert!(frs_image_membership(&FrsImage::Even { weight: 1, even: 1, odd: 1 }, 4));
        assert!(!frs_image_membership(&FrsImage::Even { weight: 2, even: 1, odd: 1 }, 4));
        assert!(!frs_image_membership(&FrsImage::Even { weight: 0, even: 2, odd: 1 }, 4));
        assert!(frs_image_membership(&FrsImage::Odd { weight: 0, length: 3 }, 5));
        assert!(!frs_image_membership(&FrsImage::Odd { weight: 0, length: 2 }, 5));
    }
}
