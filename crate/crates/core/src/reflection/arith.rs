use num_integer::Integer;

use crate::error::{Error, Result};

/// Requested parity of a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn gcd_all(xs: impl IntoIterator<Item = i64>) -> i64 {
    xs.into_iter().fold(0, gcd)
}

/// Distinct prime divisors of `|n|` by trial division.
pub fn prime_divisors(n: i64) -> Vec<i64> {
    let mut n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as i64);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n as i64);
    }
    out
}

/// Euler's totient.
pub fn phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    prime_divisors(n as i64).into_iter().fold(n, |acc, p| acc / p as u64 * (p as u64 - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|c| n.is_multiple_of(*c)).collect()
}

/// Number of divisors of `num / den`, and 0 when that is not a positive integer.
pub fn tau(num: u64, den: u64) -> u64 {
    if den == 0 || num == 0 || !num.is_multiple_of(den) {
        return 0;
    }
    divisors(num / den).len() as u64
}

/// Solve `n ≡ r_i (mod m_i)` for pairwise coprime moduli; returns `(n, M)` with `0 ≤ n < M`.
fn crt(constraints: &[(i128, i128)]) -> (i128, i128) {
    let mut n = 0i128;
    let mut m = 1i128;
    for &(r, p) in constraints {
        let r = r.rem_euclid(p);
        // Find k with n + k m ≡ r (mod p).
        let inv = (m % p).extended_gcd(&p).x;
        let k = ((r - n).rem_euclid(p) * inv).rem_euclid(p);
        n += k * m;
        m *= p;
        n = n.rem_euclid(m);
    }
    (n, m)
}

/// An `n ≥ 1` with `gcd(a + nc, b + nc) = gcd(a, b, c)`, of the requested parity.
///
/// Parity can only be requested when `a` and `b` have different parity.
pub fn triple_gcd_witness(a: i64, b: i64, c: i64, parity: Option<Parity>) -> Result<i64> {
    if a == b {
        return Err(Error::Invalid("triple gcd witness needs a != b".into()));
    }
    if parity.is_some() && (a - b).rem_euclid(2) == 0 {
        return Err(Error::Invalid("a parity constraint needs a and b of different parity".into()));
    }
    let g = gcd_all([a, b, c]);
    let (a1, b1, c1) = (a / g, b / g, c / g);
    let mut cons: Vec<(i128, i128)> =
        prime_divisors(b1 - a1).into_iter().map(|p| (if a1 % p != 0 { 0 } else { 1 }, p as i128)).collect();
    if let Some(par) = parity {
        cons.push((if par == Parity::Even { 0 } else { 1 }, 2));
    }
    let _ = c1;
    let (n, m) = crt(&cons);
    let n = if n == 0 { m } else { n };
    let ok = |n: i128| {
        let n = n as i64;
        gcd(a + n * c, b + n * c) == g && parity.is_none_or(|p| Parity::of(n) == p)
    };
    if i64::try_from(n).is_ok() && ok(n) {
        return Ok(n as i64);
    }
    let bound = 4 * (b - a).unsigned_abs().max(1) as i64 * c.abs().max(1) + 4;
    (1..=bound)
        .find(|&n| ok(n as i128))
        .ok_or_else(|| Error::Internal(format!("no triple gcd witness for ({a},{b},{c})")))
}

/// `m` with `gcd(a_i + m_i d) = gcd(d, a_1, …, a_k)`; with `force_odd`
/// (odd `d` only) every lifted value is odd as well.
pub fn lift_to_coprime(a: &[i64], d: i64, force_odd: bool) -> Result<Vec<i64>> {
    if a.len() < 2 {
        return Err(Error::Invalid("lifting needs at least two values".into()));
    }
    if force_odd && d.rem_euclid(2) == 0 {
        return Err(Error::Invalid("forcing odd lifts needs an odd modulus".into()));
    }
    let m = if force_odd {
        let shift: Vec<i64> = a.iter().map(|&x| if x.rem_euclid(2) == 1 { 0 } else { 1 }).collect();
        let odd: Vec<i64> = a.iter().zip(&shift).map(|(&x, &s)| x + s * d).collect();
        let inner = lift_plain(&odd, 2 * d);
        shift.iter().zip(inner).map(|(&s, m2)| s + 2 * m2).collect()
    } else {
        lift_plain(a, d)
    };
    let target = gcd_all(std::iter::once(d).chain(a.iter().copied()));
    let got = gcd_all(a.iter().zip(&m).map(|(&x, &mi)| x + mi * d));
    if got != target || (force_odd && a.iter().zip(&m).any(|(&x, &mi)| (x + mi * d).rem_euclid(2) == 0)) {
        return Err(Error::Internal(format!("lifting failed for {a:?} mod {d}")));
    }
    Ok(m)
}

fn lift_plain(a: &[i64], d: i64) -> Vec<i64> {
    let mut m = vec![0i64; a.len()];
    let Some(p) = a.iter().position(|&x| x != 0) else {
        m[0] = 1;
        return m;
    };
    if d == 0 {
        return m;
    }
    let pivot = a[p];
    for (i, &x) in a.iter().enumerate() {
        if i == p {
            continue;
        }
        let g = gcd_all([d, pivot, x]);
        let (pv, xi, dd) = (pivot / g, x / g, d / g);
        let cons: Vec<(i128, i128)> =
            prime_divisors(pv).into_iter().map(|q| (if xi % q != 0 { 0 } else { 1 }, q as i128)).collect();
        let _ = dd;
        m[i] = crt(&cons).0 as i64;
    }
    m
}
