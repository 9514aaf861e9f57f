use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{q, q_parse, q_to_string, TruncatedSeries, Q};
use crate::error::{Error, Result};

/// Polynomial in `t` with exact rational coefficients, degree ascending.
///
/// Trailing zeros are never stored, so the zero polynomial has no
/// coefficients and structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn t() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Q, degree: usize) -> Self {
        let mut v = vec![Q::zero(); degree + 1];
        v[degree] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| q(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Q {
        self.coeffs.get(n).cloned().unwrap_or_else(Q::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Q::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = d.degree().ok_or(Error::ZeroDenominator)?;
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Q::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(r)))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&(Q::one() / lead))
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new((0..=order).map(|i| self.coeff(i)).collect())
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", q_to_string(&a))?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

fn add_vecs(a: &[Q], b: &[Q], sign: i64) -> Vec<Q> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Q::zero);
            let y = b.get(i).cloned().unwrap_or_else(Q::zero);
            if sign > 0 {
                x + y
            } else {
                x - y
            }
        })
        .collect()
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        Polynomial::from_coeffs(add_vecs(&self.coeffs, &o.coeffs, 1))
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        Polynomial::from_coeffs(add_vecs(&self.coeffs, &o.coeffs, -1))
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(v)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { $tr::$m(&self, &o) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t { $tr::$m(&self, o) }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { $tr::$m(self, &o) }
        }
    )*};
}
pub(crate) use owned_ops;

owned_ops!(Polynomial, Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(q_to_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| q_parse(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::qr;

    #[test]
    fn arithmetic_and_display() {
        let a = Polynomial::from_ints(&[1, 1]);
        let b = Polynomial::from_ints(&[1, -1]);
        assert_eq!(&a * &b, Polynomial::from_ints(&[1, 0, -1]));
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(Polynomial::from_ints(&[1, -2, 0, 3]).to_string(), "1 - 2t + 3t^3");
        assert_eq!(a.pow(3), Polynomial::from_ints(&[1, 3, 3, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[-1, 1]);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(qq, Polynomial::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let g = Polynomial::gcd(&a, &Polynomial::from_ints(&[2, 2]));
        assert_eq!(g, Polynomial::from_ints(&[1, 1]));
        assert!(a.div_rem(&Polynomial::zero()).is_err());
        assert_eq!(Polynomial::from_ints(&[0, 0, 1]).eval(&qr(1, 2)), qr(1, 4));
    }
}
