// SPDX-License-Identifier: Apache-2.0

//! Small helpers on top of `num-rational` shared by the arithmetic modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qi(n: BigInt) -> Q {
    Q::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest integer, ties rounded up (`floor(x + 1/2)`).
pub fn round_half_up(x: &Q) -> BigInt {
    (x + frac(1, 2)).floor().to_integer()
}

/// `floor(sqrt(n))` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

pub fn is_square_int(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn sqrt_rational(x: &Q) -> Option<Q> {
    let n = is_square_int(x.numer())?;
    let d = is_square_int(x.denom())?;
    Some(Q::new(n, d))
}

/// Canonical `"p/q"` string (denominator always written).
pub fn to_pq(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Q::new(n, d))
        }
        None => Ok(qi(s.parse().map_err(|_| bad())?)),
    }
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Trial-division factorisation of `|n|` into `(prime, exponent)` pairs.
pub fn factor_int(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_roundtrip() {
        for s in ["3/1", "-1/2", "0/1", "22/7"] {
            assert_eq!(to_pq(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(to_pq(&parse_rational("-23").unwrap()), "-23/1");
        assert_eq!(to_pq(&parse_rational("2/4").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_up(&frac(1, 2)), BigInt::from(1));
        assert_eq!(round_half_up(&frac(-1, 2)), BigInt::from(0));
        assert_eq!(round_half_up(&frac(-7, 3)), BigInt::from(-2));
    }

    #[test]
    fn factoring() {
        let f = factor_int(&BigInt::from(-360));
        let f: Vec<(i64, u32)> = f.into_iter().map(|(p, e)| (p.try_into().unwrap(), e)).collect();
        assert_eq!(f, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factor_int(&BigInt::from(1)).is_empty());
    }
}
