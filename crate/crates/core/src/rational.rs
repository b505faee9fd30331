//! Helpers around `BigRational`: string (de)serialization, parsing, and
//! logarithms of big integers.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Parses `"p/q"` or `"p"`. Decimal points are rejected so that every input
/// probability is exact.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let trimmed = text.trim();
    if trimmed.contains('.') || trimmed.contains('e') || trimmed.contains('E') {
        return Err(Error::Schema(format!("expected rational \"p/q\", got {text:?}")));
    }
    let value = BigRational::from_str(trimmed)
        .map_err(|_| Error::Schema(format!("expected rational \"p/q\", got {text:?}")))?;
    Ok(value)
}

/// Canonical string form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

pub fn rational_to_f64(value: &BigRational) -> f64 {
    if let Some(v) = value.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let sign = if value.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_bigint(value.numer()) - ln_bigint(value.denom())).exp()
}

pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_uint(value: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(value.clone()))
}

/// Natural log of a positive big integer, accurate to f64 precision at any
/// magnitude. Returns `-inf` for zero.
pub fn ln_biguint(value: &BigUint) -> f64 {
    if value.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (value >> shift).to_f64().expect("64-bit head");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_bigint(value: &BigInt) -> f64 {
    ln_biguint(value.magnitude())
}

pub fn is_one(value: &BigRational) -> bool {
    value.is_one()
}

/// Serde adapter storing a `BigRational` as its canonical string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<BigRational>` as a list of strings.
pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
