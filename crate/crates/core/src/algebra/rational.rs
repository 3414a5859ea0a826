//! Exact rational scalars.
//!
//! Every constant in the engine is a [`Coefficient`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator (the invariant is
//! maintained by `num_rational`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Coefficient = BigRational;

/// The rational `n / d`.
pub fn q(n: i64, d: i64) -> Coefficient {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Coefficient {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Coefficient {
    Coefficient::zero()
}

pub fn one() -> Coefficient {
    Coefficient::one()
}

/// Parses `"a"` or `"a/b"` (optional sign on `a`, `b > 0`).
pub fn parse(s: &str) -> Result<Coefficient> {
    let s = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Formats as `"a/b"`, or `"a"` when the denominator is one.
pub fn format(c: &Coefficient) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `n!!` with the conventions `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `c^n` for a possibly negative exponent (`c` must be nonzero when `n < 0`).
pub fn pow(c: &Coefficient, n: i64) -> Coefficient {
    let base = if n < 0 { c.recip() } else { c.clone() };
    (0..n.unsigned_abs()).fold(one(), |acc, _| acc * &base)
}

/// Serde adapter writing a coefficient as its `"a/b"` string.
pub mod serde_str {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Coefficient, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(c))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Coefficient, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/4").unwrap(), q(3, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(format(&q(-5, 10)), "-1/2");
        assert_eq!(format(&int(12)), "12");
        assert!(parse("1/0").is_err());
        assert!(parse("1/-2").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn double_factorials() {
        let table: Vec<i64> = (-1..8)
            .map(|n| i64::try_from(double_factorial(n)).unwrap())
            .collect();
        assert_eq!(table, vec![1, 1, 1, 2, 3, 8, 15, 48, 105]);
    }
}
