use num_traits::{One, Zero};

use super::{q, Polynomial, TruncatedSeries, Q};
use crate::error::{Error, Result};

/// Truncated series in `t` and `x`; `c[i][j]` is the coefficient of `t^i x^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    order_t: usize,
    order_x: usize,
    c: Vec<Vec<Q>>,
}

impl BivariateSeries {
    pub fn zero(order_t: usize, order_x: usize) -> Self {
        BivariateSeries { order_t, order_x, c: vec![vec![Q::zero(); order_x + 1]; order_t + 1] }
    }

    pub fn one(order_t: usize, order_x: usize) -> Self {
        let mut s = Self::zero(order_t, order_x);
        s.c[0][0] = Q::one();
        s
    }

    pub fn order_t(&self) -> usize {
        self.order_t
    }

    pub fn order_x(&self) -> usize {
        self.order_x
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        self.c.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        if i <= self.order_t && j <= self.order_x {
            self.c[i][j] = v;
        }
    }

    /// Set column `x^j` from a polynomial in `t`, truncating.
    pub fn set_x_poly(&mut self, j: usize, p: &Polynomial) {
        for i in 0..=self.order_t {
            self.set(i, j, p.coeff(i));
        }
    }

    /// The coefficient of `x^j` as a series in `t`.
    pub fn x_coefficient(&self, j: usize) -> TruncatedSeries {
        TruncatedSeries::new((0..=self.order_t).map(|i| self.coeff(i, j)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(|v| v.is_zero())
    }

    pub fn scale(&self, k: &Q) -> Self {
        let mut out = self.clone();
        out.c.iter_mut().flatten().for_each(|v| *v *= k);
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        let (ot, ox) = (self.order_t.min(o.order_t), self.order_x.min(o.order_x));
        let mut out = Self::zero(ot, ox);
        for i in 0..=ot {
            for j in 0..=ox {
                out.c[i][j] = f(&self.c[i][j], &o.c[i][j]);
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (ot, ox) = (self.order_t.min(o.order_t), self.order_x.min(o.order_x));
        let mut out = Self::zero(ot, ox);
        for i1 in 0..=ot {
            for j1 in 0..=ox {
                let a = &self.c[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=ot - i1 {
                    for j2 in 0..=ox - j1 {
                        let b = &o.c[i2][j2];
                        if !b.is_zero() {
                            out.c[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.c[0][0].is_zero() {
            return Err(Error::ExpUndefined);
        }
        let mut result = Self::one(self.order_t, self.order_x);
        let mut term = result.clone();
        let mut n = 1i64;
        loop {
            term = term.mul(self).scale(&(Q::one() / q(n)));
            if term.is_zero() {
                break;
            }
            result = result.add(&term);
            n += 1;
        }
        Ok(result)
    }

    /// `(1 - t x)^(-t)`, whose `x^n` coefficient is `binom(-t, n) (-t)^n`.
    pub fn binomial(order_t: usize, order_x: usize) -> Self {
        let mut out = Self::zero(order_t, order_x);
        let mut b = Polynomial::one();
        let minus_t = Polynomial::from_ints(&[0, -1]);
        for n in 0..=order_x {
            if n > 0 {
                let factor = &minus_t - &Polynomial::constant(q(n as i64 - 1));
                b = (&b * &factor).scale(&(Q::one() / q(n as i64)));
            }
            out.set_x_poly(n, &(&b * &minus_t.pow(n as u32)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_columns() {
        let b = BivariateSeries::binomial(6, 3);
        assert_eq!(b.x_coefficient(0).to_i64(), vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(b.x_coefficient(1).to_i64(), vec![0, 0, 1, 0, 0, 0, 0]);
        let c2 = b.x_coefficient(2);
        assert_eq!(c2.coeff(3), super::super::qr(1, 2));
        assert_eq!(c2.coeff(4), super::super::qr(1, 2));
    }

    #[test]
    fn exp_of_x() {
        let mut f = BivariateSeries::zero(0, 3);
        f.set(0, 1, q(1));
        let e = f.exp().unwrap();
        assert_eq!(e.coeff(0, 3), super::super::qr(1, 6));
        let mut g = BivariateSeries::zero(0, 0);
        g.set(0, 0, q(1));
        assert_eq!(g.exp(), Err(Error::ExpUndefined));
    }
}
