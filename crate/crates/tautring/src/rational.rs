//! Exact rational arithmetic helpers.
//!
//! All coefficients in the crate are `num::BigRational`. This module adds the
//! few conveniences the rest of the code wants: integer constructors, the
//! `p/q` string form used in JSON reports, and serde adapters for maps with
//! rational values.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

use crate::{invalid, Error, Result};

/// The coefficient field: arbitrary-precision rationals.
pub type Q = BigRational;

/// The rational `n`.
pub fn q_int<T: Into<BigInt>>(n: T) -> Q {
    BigRational::from_integer(n.into())
}

/// The rational `n / d`.
pub fn q_ratio<T: Into<BigInt>, U: Into<BigInt>>(n: T, d: U) -> Q {
    BigRational::new(n.into(), d.into())
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

/// Binomial coefficient `n choose k` as a rational.
pub fn binomial(n: u64, k: u64) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
    }
    for i in 2..=k {
        acc /= i;
    }
    BigRational::from_integer(acc)
}

/// Double factorial `n!!` for odd `n >= -1` (with `(-1)!! = 1`).
pub fn odd_double_factorial(n: i64) -> Q {
    assert!(
        n >= -1 && n % 2 != 0,
        "odd_double_factorial needs odd n >= -1, got {n}"
    );
    let mut acc = BigInt::one();
    let mut i = n;
    while i >= 3 {
        acc *= i;
        i -= 2;
    }
    BigRational::from_integer(acc)
}

/// Renders a rational as `p` or `p/q` in lowest terms, e.g. `-3/4`, `7`, `0`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (lowest terms not required).
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let make = |err: &str| -> Error { invalid!("cannot parse rational `{s}`: {err}") };
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|e| make(&e.to_string()))?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|e| make(&e.to_string()))?;
            let d = BigInt::from_str(den.trim()).map_err(|e| make(&e.to_string()))?;
            if d.is_zero() {
                return Err(make("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Serde adapter serializing a `Q` as the string `p/q`.
pub mod q_string {
    use super::{format_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, ser: S) -> Result<S::Ok, S::Error> {
        format_q(x).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Q, D::Error> {
        let s = String::deserialize(de)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// Evaluates at `x0` the unique polynomial interpolating `points` (pairwise
/// distinct abscissas), by Lagrange interpolation.
pub fn lagrange_eval(points: &[(Q, Q)], x0: &Q) -> Q {
    let mut total = Q::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = yi.clone();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                term = term * (x0 - xj) / (xi - xj);
            }
        }
        total += term;
    }
    total
}

/// True if `x` is an integer.
pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Absolute value.
pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-22/7"] {
            let x = parse_q(s).unwrap();
            assert_eq!(format_q(&x), s);
        }
        assert_eq!(format_q(&parse_q("4/6").unwrap()), "2/3");
        assert_eq!(format_q(&parse_q(" -4 / 6 ").unwrap()), "-2/3");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), q_int(1));
        assert_eq!(factorial(5), q_int(120));
        assert_eq!(odd_double_factorial(-1), q_int(1));
        assert_eq!(odd_double_factorial(1), q_int(1));
        assert_eq!(odd_double_factorial(7), q_int(105));
        assert_eq!(binomial(5, 2), q_int(10));
        assert_eq!(binomial(3, 5), q_int(0));
    }

    #[test]
    fn lagrange_recovers_polynomial() {
        // p(x) = 3x^2 - x + 5 sampled at 0,1,2; evaluate elsewhere.
        let p = |x: i64| q_int(3 * x * x - x + 5);
        let pts: Vec<(Q, Q)> = (0..3).map(|x| (q_int(x), p(x))).collect();
        assert_eq!(lagrange_eval(&pts, &q_int(10)), p(10));
        assert_eq!(lagrange_eval(&pts, &q_int(0)), p(0));
    }
}
