use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::polynomial::owned_ops;
use super::{q, q_parse, q_to_string, Polynomial, Q};
use crate::error::{Error, Result};

/// Power series known exactly up to and including `t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    /// Build from coefficients `c_0..=c_order`. An empty vector is treated
    /// as the zero series of order 0.
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Q::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zeros(order: usize) -> Self {
        Self::new(vec![Q::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = Q::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Q {
        self.coeffs.get(n).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, n: usize, c: Q) {
        if n < self.coeffs.len() {
            self.coeffs[n] = c;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new((0..=order.min(self.order())).map(|i| self.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`; the order is kept.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        Self::new((0..n).map(|i| if i >= k { self.coeff(i - k) } else { Q::zero() }).collect())
    }

    /// Term-wise derivative; the result has order one less.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::DerivativeUndefined);
        }
        Ok(Self::new((1..self.coeffs.len()).map(|i| &self.coeffs[i] * q(i as i64)).collect()))
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotExpandable);
        }
        let n = self.coeffs.len();
        let mut out = vec![Q::zero(); n];
        out[0] = Q::one() / c0;
        for k in 1..n {
            let mut s = Q::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -s / c0;
        }
        Ok(Self::new(out))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.clone())
    }

    /// Coefficients as integers, failing on the first non-integral one.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.numer().clone())
                } else {
                    Err(Error::NonIntegral { degree: i, value: q_to_string(c) })
                }
            })
            .collect()
    }

    /// Coefficients as `i64`; panics on overflow or non-integral values.
    pub fn to_i64(&self) -> Vec<i64> {
        self.to_integers()
            .expect("integral series")
            .iter()
            .map(|b| i64::try_from(b).expect("coefficient fits in i64"))
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.to_polynomial();
        write!(f, "{body} + O(t^{})", self.order() + 1)
    }
}

fn zip_with(a: &TruncatedSeries, b: &TruncatedSeries, f: impl Fn(&Q, &Q) -> Q) -> TruncatedSeries {
    let n = a.coeffs.len().min(b.coeffs.len());
    TruncatedSeries::new((0..n).map(|i| f(&a.coeffs[i], &b.coeffs[i])).collect())
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, o: &TruncatedSeries) -> TruncatedSeries {
        zip_with(self, o, |x, y| x + y)
    }
}

impl Sub<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: &TruncatedSeries) -> TruncatedSeries {
        zip_with(self, o, |x, y| x - y)
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut v = vec![Q::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                v[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        TruncatedSeries::new(v)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

owned_ops!(TruncatedSeries, Add add, Sub sub, Mul mul);

#[derive(Serialize, Deserialize)]
struct Wire {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire { order: self.order(), coeffs: self.coeffs.iter().map(q_to_string).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.coeffs.len() != w.order + 1 {
            return Err(serde::de::Error::custom("coefficient count does not match order"));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| q_parse(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_minus_t() {
        let s = TruncatedSeries::from_ints(&[1, -1, 0, 0, 0]);
        assert_eq!(s.inverse().unwrap().to_i64(), vec![1, 1, 1, 1, 1]);
        assert!(TruncatedSeries::from_ints(&[0, 1]).inverse().is_err());
    }

    #[test]
    fn derivative_order_zero_fails() {
        assert_eq!(TruncatedSeries::from_ints(&[3]).derivative(), Err(Error::DerivativeUndefined));
        let d = TruncatedSeries::from_ints(&[1, 2, 3]).derivative().unwrap();
        assert_eq!(d.to_i64(), vec![2, 6]);
    }

    #[test]
    fn json_round_trip() {
        let s = TruncatedSeries::new(vec![q(1), super::super::qr(1, 2)]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"order":1,"coeffs":["1","1/2"]}"#);
        let back: TruncatedSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
