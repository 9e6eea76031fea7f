//! Exact rational arithmetic. Every quantity in the crate (volumes, xi,
//! plurigenera, filter margins) lives in `Rational`; floats are forbidden
//! outside display code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Exact integer value, if the rational is an integer.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        i64::try_from(q.numer().clone()).ok()
    } else {
        None
    }
}

/// Least integer strictly greater than `q`.
pub fn floor_plus_one(q: &Rational) -> BigInt {
    q.floor().to_integer() + 1
}

pub fn ceil_big(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// Serializes as `p/q`, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if is_integer(q) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/420", "-3/7", "6", "85/72072"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert_eq!(format_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn strict_ceiling_helpers() {
        assert_eq!(floor_plus_one(&rat(33, 5)), BigInt::from(7));
        assert_eq!(floor_plus_one(&int(37)), BigInt::from(38));
    }
}
