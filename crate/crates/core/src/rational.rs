//! Exact rational scalars used for every coordinate and weight in the crate.
//!
//! All arithmetic is performed on [`num_rational::BigRational`], which keeps
//! values in canonical form (reduced, positive denominator). Nothing in this
//! crate ever rounds a coordinate; floating point appears only when a report
//! evaluates a logarithmic bound numerically.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt::Write as _;

/// The scalar type for all geometry.
pub type Rat = BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(numer: i64, denom: i64) -> Rat {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer-valued rational.
pub fn rat_int(value: i64) -> Rat {
    BigRational::from_integer(BigInt::from(value))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(value: &Rat) -> i8 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

/// Smallest integer `>= value`, as a rational.
pub fn ceil_rat(value: &Rat) -> Rat {
    value.ceil()
}

/// Renders a rational in the canonical on-disk form: `"p"` for integers,
/// `"p/q"` otherwise.
pub fn format_rat(value: &Rat) -> String {
    let mut out = String::new();
    write!(out, "{}", value.numer()).unwrap();
    if !value.denom().is_one() {
        write!(out, "/{}", value.denom()).unwrap();
    }
    out
}

/// Parses the `"p"` / `"p/q"` forms produced by [`format_rat`]. Whitespace is
/// not accepted; the denominator must be nonzero.
pub fn parse_rat(text: &str) -> Result<Rat, RatParseError> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| RatParseError(text.to_string()))?;
    let denom: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| RatParseError(text.to_string()))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(RatParseError(text.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?} (expected \"p\" or \"p/q\")")]
pub struct RatParseError(pub String);

/// Numeric value for report output. Exact comparisons never go through this.
pub fn to_f64(value: &Rat) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Base-2 logarithm of a positive rational, as `f64`.
pub fn log2(value: &Rat) -> f64 {
    to_f64(value).log2()
}

use num_traits::One;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_round_trip() {
        for (n, d, text) in [(3, 1, "3"), (-3, 1, "-3"), (1, 2, "1/2"), (-7, 3, "-7/3")] {
            let v = rat(n, d);
            assert_eq!(format_rat(&v), text);
            assert_eq!(parse_rat(text).unwrap(), v);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rat("4/-6").unwrap(), rat(-2, 3));
        assert_eq!(format_rat(&parse_rat("4/-6").unwrap()), "-2/3");
    }

    #[test]
    fn parse_rejects_junk() {
        for bad in ["", "1/0", "a", "1/2/3", "1.5", " 1"] {
            assert!(parse_rat(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn ceil_of_rationals() {
        assert_eq!(ceil_rat(&rat(1, 2)), rat_int(1));
        assert_eq!(ceil_rat(&rat(-1, 2)), rat_int(0));
        assert_eq!(ceil_rat(&rat_int(3)), rat_int(3));
    }
}
