//! Serde adapters for exact numbers.
//!
//! Integers are written as JSON numbers when `|v| < 2^53` and as decimal
//! strings otherwise, so any JSON consumer can read them without loss.
//! Rationals are written as `{"num": a, "den": b}` in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

const SAFE_LIMIT: i64 = 1 << 53;

/// Borrowed view that serializes a [`BigInt`] in the interchange form.
pub struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() < SAFE_LIMIT => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Signed(i64),
    Unsigned(u64),
    Text(String),
}

/// Owned integer parsed from either a JSON number or a decimal string.
pub struct ParsedInt(pub BigInt);

impl<'de> Deserialize<'de> for ParsedInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match IntRepr::deserialize(d)? {
            IntRepr::Signed(v) => Ok(ParsedInt(BigInt::from(v))),
            IntRepr::Unsigned(v) => Ok(ParsedInt(BigInt::from(v))),
            IntRepr::Text(t) => t
                .trim()
                .parse::<BigInt>()
                .map(ParsedInt)
                .map_err(|_| de::Error::custom(format!("not an integer: {t:?}"))),
        }
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        ParsedInt::deserialize(d).map(|p| p.0)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&JsonInt(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<ParsedInt>::deserialize(d)?;
        Ok(raw.into_iter().map(|p| p.0).collect())
    }
}

pub mod bigint_rows {
    use super::*;

    struct Row<'a>(&'a [BigInt]);

    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::bigint_vec::serialize(self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for row in v {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw = Vec::<Vec<ParsedInt>>::deserialize(d)?;
        Ok(raw
            .into_iter()
            .map(|r| r.into_iter().map(|p| p.0).collect())
            .collect())
    }
}

/// Borrowed view that serializes a rational as `{"num": a, "den": b}`.
pub struct JsonRatio<'a>(pub &'a BigRational);

impl Serialize for JsonRatio<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Ratio", 2)?;
        st.serialize_field("num", &JsonInt(self.0.numer()))?;
        st.serialize_field("den", &JsonInt(self.0.denom()))?;
        st.end()
    }
}

pub mod ratio {
    use super::*;

    #[derive(Deserialize)]
    struct Raw {
        num: ParsedInt,
        den: ParsedInt,
    }

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        JsonRatio(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = Raw::deserialize(d)?;
        if !raw.den.0.is_positive() {
            return Err(de::Error::custom("denominator must be positive"));
        }
        Ok(BigRational::new(raw.num.0, raw.den.0))
    }
}
