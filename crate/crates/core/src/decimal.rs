//! Serde adapters that carry `BigInt` values as decimal strings.
//!
//! Deserialization also accepts plain JSON integers so that hand-written
//! inputs such as `[[1,1,-1]]` work; serialization always emits strings.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Str(String),
    Int(i64),
    UInt(u64),
}

impl Raw {
    fn into_bigint<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            Raw::Str(s) => parse(&s).map_err(E::custom),
            Raw::Int(v) => Ok(BigInt::from(v)),
            Raw::UInt(v) => Ok(BigInt::from(v)),
        }
    }
}

/// Parses a decimal integer with an optional leading sign.
pub fn parse(s: &str) -> Result<BigInt, String> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a decimal integer: {s:?}"));
    }
    t.parse::<BigInt>().map_err(|e| format!("{s:?}: {e}"))
}

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    Raw::deserialize(d)?.into_bigint()
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Raw>::deserialize(d)?
            .into_iter()
            .map(Raw::into_bigint)
            .collect()
    }
}

pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = v
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<Raw>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(Raw::into_bigint).collect())
            .collect()
    }
}

pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        match Option::<Raw>::deserialize(d)? {
            Some(r) => r.into_bigint().map(Some),
            None => Ok(None),
        }
    }
}

pub mod opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.iter().map(ToString::to_string).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        match Option::<Vec<Raw>>::deserialize(d)? {
            Some(v) => v
                .into_iter()
                .map(Raw::into_bigint)
                .collect::<Result<_, _>>()
                .map(Some),
            None => Ok(None),
        }
    }
}

pub mod opt_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Vec<BigInt>>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(m) => {
                let rows: Vec<Vec<String>> = m
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect();
                s.serialize_some(&rows)
            }
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<Vec<Vec<BigInt>>>, D::Error> {
        match Option::<Vec<Vec<Raw>>>::deserialize(d)? {
            Some(m) => m
                .into_iter()
                .map(|r| r.into_iter().map(Raw::into_bigint).collect())
                .collect::<Result<_, _>>()
                .map(Some),
            None => Ok(None),
        }
    }
}

/// Parses a comma separated list such as `1,1,-2`.
pub fn parse_list(s: &str) -> Result<Vec<BigInt>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse).collect()
}
