use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::polynomial::owned_ops;
use super::{Polynomial, TruncatedSeries, Q};
use crate::error::{Error, Result};

/// Rational generating function `num / den` with `den(0) != 0`.
///
/// Equality is decided by cross-multiplication, so two unreduced
/// representations of the same function compare equal.
#[derive(Clone, Debug)]
pub struct RationalGf {
    num: Polynomial,
    den: Polynomial,
}

/// Expand `num / den` up to and including `t^order`.
pub fn expand_rational(num: &Polynomial, den: &Polynomial, order: usize) -> Result<TruncatedSeries> {
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(if den.is_zero() { Error::ZeroDenominator } else { Error::NotExpandable });
    }
    let dc = den.coeffs();
    let mut out: Vec<Q> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut s = num.coeff(n);
        for (i, c) in dc.iter().enumerate().skip(1).take(n) {
            if !c.is_zero() {
                s -= c * &out[n - i];
            }
        }
        out.push(s / &d0);
    }
    Ok(TruncatedSeries::new(out))
}

impl RationalGf {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if den.coeff(0).is_zero() {
            return Err(Error::NotExpandable);
        }
        Ok(RationalGf { num, den })
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(Polynomial::from_ints(num), Polynomial::from_ints(den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalGf { num: p, den: Polynomial::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn t() -> Self {
        Self::from_poly(Polynomial::t())
    }

    /// `1 / (1 - t)`.
    pub fn geometric() -> Self {
        RationalGf { num: Polynomial::one(), den: Polynomial::from_ints(&[1, -1]) }
    }

    /// `(1 + t) / (1 - t)`, the growth series of the integers.
    pub fn integers() -> Self {
        RationalGf { num: Polynomial::from_ints(&[1, 1]), den: Polynomial::from_ints(&[1, -1]) }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn expand(&self, order: usize) -> TruncatedSeries {
        expand_rational(&self.num, &self.den, order).expect("validated denominator")
    }

    pub fn scale(&self, c: &Q) -> Self {
        RationalGf { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        RationalGf { num: &self.num * p, den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalGf { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Quotient-rule derivative.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalGf { num: n, den: &self.den * &self.den }
    }

    /// Division; the divisor's numerator must have a nonzero constant term.
    pub fn checked_div(&self, o: &RationalGf) -> Result<Self> {
        RationalGf::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// Cancel the common factor and scale so that `den(0) = 1`.
    pub fn reduced(&self) -> Self {
        let g = Polynomial::gcd(&self.num, &self.den);
        let (mut n, mut d) = if g.is_zero() || g.degree() == Some(0) {
            (self.num.clone(), self.den.clone())
        } else {
            (self.num.div_rem(&g).expect("gcd nonzero").0, self.den.div_rem(&g).expect("gcd nonzero").0)
        };
        if n.is_zero() {
            d = Polynomial::one();
        }
        let c = Q::one() / d.coeff(0);
        n = n.scale(&c);
        d = d.scale(&c);
        RationalGf { num: n, den: d }
    }

    /// `Some(p)` when this function is a polynomial.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let (q, r) = self.num.div_rem(&self.den).ok()?;
        r.is_zero().then_some(q)
    }

    /// Numerator and denominator both have integer coefficients after reduction.
    pub fn is_integral(&self) -> bool {
        let r = self.reduced();
        r.num.is_integral() && r.den.is_integral()
    }

    fn combine(&self, o: &RationalGf, sign: i64) -> RationalGf {
        if self.den == o.den {
            let num = if sign > 0 { &self.num + &o.num } else { &self.num - &o.num };
            return RationalGf { num, den: self.den.clone() };
        }
        let a = &self.num * &o.den;
        let b = &o.num * &self.den;
        let num = if sign > 0 { &a + &b } else { &a - &b };
        RationalGf { num, den: &self.den * &o.den }
    }
}

impl PartialEq for RationalGf {
    fn eq(&self, o: &RationalGf) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RationalGf {}

impl From<Polynomial> for RationalGf {
    fn from(p: Polynomial) -> Self {
        RationalGf::from_poly(p)
    }
}

impl fmt::Display for RationalGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add<&RationalGf> for &RationalGf {
    type Output = RationalGf;
    fn add(self, o: &RationalGf) -> RationalGf {
        self.combine(o, 1)
    }
}

impl Sub<&RationalGf> for &RationalGf {
    type Output = RationalGf;
    fn sub(self, o: &RationalGf) -> RationalGf {
        self.combine(o, -1)
    }
}

impl Mul<&RationalGf> for &RationalGf {
    type Output = RationalGf;
    fn mul(self, o: &RationalGf) -> RationalGf {
        RationalGf { num: &self.num * &o.num, den: &self.den * &o.den }
    }
}

impl Neg for &RationalGf {
    type Output = RationalGf;
    fn neg(self) -> RationalGf {
        RationalGf { num: -&self.num, den: self.den.clone() }
    }
}

owned_ops!(RationalGf, Add add, Sub sub, Mul mul);

#[derive(Serialize, Deserialize)]
struct Wire {
    num: Polynomial,
    den: Polynomial,
}

impl Serialize for RationalGf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.reduced();
        Wire { num: r.num, den: r.den }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalGf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        RationalGf::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}
