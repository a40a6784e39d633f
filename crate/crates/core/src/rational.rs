//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Serializes as `"p/q"`, always with an explicit denominator.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or an integer `"p"`. Rejects non-reduced fractions,
/// non-positive denominators and decimal points so that every rational has
/// exactly one accepted spelling.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::InvalidRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid_int = |t: &str, signed: bool| {
        let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        !digits.is_empty()
            && digits.bytes().all(|b| b.is_ascii_digit())
            && (digits == "0" || !digits.starts_with('0'))
    };
    if !valid_int(n, true) || !valid_int(d, false) || n == "-0" {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if !d.is_positive() {
        return Err(bad());
    }
    let r = Q::new(n.clone(), d.clone());
    if r.numer() != &n || r.denom() != &d {
        return Err(bad());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format_q(&q(2, 4)), "1/2");
        assert_eq!(format_q(&qi(3)), "3/1");
        assert_eq!(parse_q("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_q("-1/3").unwrap(), q(-1, 3));
        assert_eq!(parse_q("2").unwrap(), qi(2));
        assert_eq!(parse_q("0/1").unwrap(), zero());
    }

    #[test]
    fn rejects_non_canonical() {
        for s in ["2/4", "1/0", "1/-2", "0.5", "", "/2", "01/2", "-0/1", "a/b", "1/2/3"] {
            assert!(parse_q(s).is_err(), "{s}");
        }
    }
}
