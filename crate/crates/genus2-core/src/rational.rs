//! Exact rational scalars.
//!
//! All field arithmetic in this crate runs over arbitrary-precision
//! rationals kept in canonical form (reduced, positive denominator).

use crate::error::{Error, Result};
use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rational = BigRational;
pub type Int = BigInt;

/// `n/d` as a canonical rational. Panics on `d = 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `p`, `-p` or `p/q` with a positive integer `q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{num_s}`")))?;
    let den: BigInt = match den_s {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator `{d}`")))?,
        None => BigInt::one(),
    };
    if den.sign() != Sign::Plus {
        return Err(Error::Parse(format!("denominator must be positive in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Split a whitespace-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split_whitespace().map(parse_rational).collect()
}

/// Exact square root when `r` is a perfect rational square.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// `r^k` for a small non-negative exponent.
pub fn pow(r: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}
