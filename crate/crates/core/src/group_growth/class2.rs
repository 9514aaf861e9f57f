use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{q, Polynomial, RationalGf, TruncatedSeries};

fn one_plus_kt(k: i64) -> Polynomial {
    Polynomial::from_ints(&[1, k])
}

/// `(1+t²)/(1−t²)·G + t·G′`, the structure-group series of a class-2 presentation.
pub fn class2_lift(small: &RationalGf) -> RationalGf {
    let factor = RationalGf::from_ints(&[1, 0, 1], &[1, 0, -1]).expect("valid");
    let lifted = &(&factor * small) + &small.derivative().mul_poly(&Polynomial::t());
    lifted.reduced()
}

/// Truncated version of [`class2_lift`]; the order is preserved.
pub fn class2_lift_series(small: &TruncatedSeries) -> Result<TruncatedSeries> {
    let n = small.order();
    if n == 0 {
        return Err(Error::DerivativeUndefined);
    }
    let factor = RationalGf::from_ints(&[1, 0, 1], &[1, 0, -1]).expect("valid").expand(n);
    let first = &factor * small;
    let coeffs = (0..=n).map(|i| first.coeff(i) + small.coeff(i) * q(i as i64)).collect();
    Ok(TruncatedSeries::new(coeffs))
}

/// `∏_{k=1}^{d−1} (1 + k t)`, the transposition-length series of `S_d`.
pub fn solomon_series(d: usize) -> RationalGf {
    let p = (1..d as i64).fold(Polynomial::one(), |acc, k| &acc * &one_plus_kt(k));
    RationalGf::from_poly(p)
}

/// Growth series of the structure group of the transposition solution.
pub fn as_transpositions_group_gf(d: usize) -> Result<RationalGf> {
    if d < 2 {
        return Err(Error::Invalid("transposition structure group needs d >= 2".into()));
    }
    let tail = (2..d as i64).fold(Polynomial::one(), |acc, k| &acc * &one_plus_kt(k));
    let first = RationalGf::new(&tail * &Polynomial::from_ints(&[1, 0, 1]), Polynomial::from_ints(&[1, -1]))?;
    let mut deriv = Polynomial::zero();
    for k in 1..d as i64 {
        let others = (1..d as i64).filter(|&j| j != k).fold(Polynomial::one(), |acc, j| &acc * &one_plus_kt(j));
        deriv = &deriv + &others.scale(&q(k));
    }
    Ok((&first + &RationalGf::from_poly(deriv.shift(1))).reduced())
}

/// Growth series of the structure group of the reflection solution `R_d`.
pub fn as_reflections_group_gf(d: usize) -> Result<RationalGf> {
    if d < 2 {
        return Err(Error::Invalid("reflection structure group needs d >= 2".into()));
    }
    let di = d as i64;
    let gf = if d % 2 == 1 {
        &RationalGf::from_ints(&[0, 2 * di], &[1, -1])? + &RationalGf::from_poly(Polynomial::from_ints(&[1, 0, di - 1]))
    } else {
        let half = di / 2;
        let sq = RationalGf::integers().pow(2).scale(&q(half));
        &sq + &RationalGf::from_poly(Polynomial::from_ints(&[-(half - 1), 0, half - 1]))
    };
    Ok(gf.reduced())
}

/// True when all coefficients from index `from` on equal `value`.
pub fn eventually_constant(s: &TruncatedSeries, from: usize, value: i64) -> bool {
    (from..=s.order()).all(|i| (s.coeff(i) - q(value)).is_zero())
}
