//! Exact rational scalars and parsing/serialization helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// The exact scalar used throughout the crate.
pub type Ratio = BigRational;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> Ratio {
    assert!(den != 0, "zero denominator");
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer constant.
pub fn int(value: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(value))
}

/// Parses "a/b", an integer, or a decimal such as "0.75".
pub fn parse_ratio(s: &str) -> Result<Ratio, ParseRatioError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatioError(s.to_string()));
    }
    if let Some((head, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRatioError(s.to_string()));
        }
        let negative = head.starts_with('-');
        let int_part =
            BigInt::from_str(if head == "-" || head.is_empty() { "0" } else { head })
                .map_err(|_| ParseRatioError(s.to_string()))?;
        let num = BigInt::from_str(frac).map_err(|_| ParseRatioError(s.to_string()))?;
        let den = BigInt::from(10u8).pow(frac.len() as u32);
        let frac_part = Ratio::new(num, den);
        let int_part = Ratio::from_integer(int_part);
        return Ok(if negative {
            int_part - frac_part
        } else {
            int_part + frac_part
        });
    }
    Ratio::from_str(s).map_err(|_| ParseRatioError(s.to_string()))
}

/// Formats a rational as "p/q" ("p" when q = 1); the canonical text form.
pub fn format_ratio(r: &Ratio) -> String {
    r.to_string()
}

/// Decimal approximation annotated with the number of significant digits,
/// e.g. "0.333333333333 (12 digits)".
pub fn approx_with_digits(r: &Ratio, digits: usize) -> String {
    let value = r.to_f64().unwrap_or(f64::NAN);
    format!("{value:.prec$} ({prec} digits)", prec = digits)
}

/// Ceiling of a rational as a big integer.
pub fn ceil_int(r: &Ratio) -> BigInt {
    r.ceil().to_integer()
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(values: &[Ratio]) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = num_integer::lcm(l, v.denom().clone());
    }
    l
}

/// l1 norm of the componentwise difference of two equal-length vectors.
pub fn l1_distance(a: &[Ratio], b: &[Ratio]) -> Ratio {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    let mut acc = Ratio::zero();
    for (x, y) in a.iter().zip(b) {
        acc += (x - y).abs();
    }
    acc
}

/// l-infinity norm of the componentwise difference.
pub fn linf_distance(a: &[Ratio], b: &[Ratio]) -> Ratio {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    let mut best = Ratio::zero();
    for (x, y) in a.iter().zip(b) {
        let d = (x - y).abs();
        if d > best {
            best = d;
        }
    }
    best
}

/// Squared l2 distance (kept squared so it stays rational).
pub fn l2_distance_squared(a: &[Ratio], b: &[Ratio]) -> Ratio {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    let mut acc = Ratio::zero();
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += &d * &d;
    }
    acc
}

/// Serde adapter storing rationals as "p/q" strings.
pub mod ratio_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals.
pub mod ratio_vec_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Ratio], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_ratio))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Ratio>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_ratio(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational number: {0:?}")]
pub struct ParseRatioError(pub String);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_ratio("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_ratio("7").unwrap(), int(7));
        assert_eq!(parse_ratio("0.75").unwrap(), rat(3, 4));
        assert_eq!(parse_ratio("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_ratio(" 2/6 ").unwrap(), rat(1, 3));
        assert!(parse_ratio("").is_err());
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("a/b").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_ratio(&rat(2, 6)), "1/3");
        assert_eq!(format_ratio(&int(5)), "5");
    }

    #[test]
    fn distances() {
        let a = [rat(1, 2), rat(1, 2)];
        let b = [rat(3, 4), rat(1, 4)];
        assert_eq!(l1_distance(&a, &b), rat(1, 2));
        assert_eq!(linf_distance(&a, &b), rat(1, 4));
        assert_eq!(l2_distance_squared(&a, &b), rat(1, 8));
    }
}
