//! Serde helpers: complex numbers travel as `[re, im]` pairs in all JSON
//! interfaces, and scalars may be given as a bare number where convenient.

use crate::Cx;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use std::fmt;

/// `#[serde(with = "crate::jsonio::cx")]` for a single complex field.
pub mod cx {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Cx, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&c.re)?;
        seq.serialize_element(&c.im)?;
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Cx, D::Error> {
        d.deserialize_any(CxVisitor)
    }
}

/// `#[serde(with = "crate::jsonio::cxvec")]` for `Vec<Cx>` fields.
pub mod cxvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Cx], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for c in v {
            seq.serialize_element(&[c.re, c.im])?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Cx>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<Cx>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of complex numbers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<Cx>, A::Error> {
                let mut out = Vec::new();
                while let Some(c) = seq.next_element::<CxValue>()? {
                    out.push(c.0);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(V)
    }
}

/// A complex number accepted either as `[re, im]` or as a bare real number.
pub struct CxValue(pub Cx);

/// A standalone complex field serializing as `[re, im]`, for optional slots
/// where `#[serde(with = ...)]` does not apply.
#[derive(Debug, Clone, Copy)]
pub struct CxField(pub Cx);

impl serde::Serialize for CxField {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        cx::serialize(&self.0, s)
    }
}

impl<'de> serde::Deserialize<'de> for CxField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        cx::deserialize(d).map(CxField)
    }
}

impl<'de> serde::Deserialize<'de> for CxValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        cx::deserialize(d).map(CxValue)
    }
}

struct CxVisitor;

impl<'de> Visitor<'de> for CxVisitor {
    type Value = Cx;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a real number or an [re, im] pair")
    }
    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Cx, E> {
        Ok(Cx::new(v, 0.0))
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Cx, E> {
        Ok(Cx::new(v as f64, 0.0))
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Cx, E> {
        Ok(Cx::new(v as f64, 0.0))
    }
    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Cx, A::Error> {
        let re: f64 = seq
            .next_element()?
            .ok_or_else(|| de::Error::custom("missing real part"))?;
        let im: f64 = seq.next_element()?.unwrap_or(0.0);
        Ok(Cx::new(re, im))
    }
}

/// Parse a `[re, im]` (or bare number) JSON string into a complex value.
pub fn parse_cx(s: &str) -> crate::Result<Cx> {
    let v: serde_json::Value = serde_json::from_str(s)?;
    cx_from_value(&v)
}

pub fn cx_from_value(v: &serde_json::Value) -> crate::Result<Cx> {
    match v {
        serde_json::Value::Number(n) => Ok(Cx::new(
            n.as_f64()
                .ok_or_else(|| crate::Error::Validation("bad number".into()))?,
            0.0,
        )),
        serde_json::Value::Array(a) if a.len() == 2 || a.len() == 1 => {
            let re = a[0]
                .as_f64()
                .ok_or_else(|| crate::Error::Validation("bad real part".into()))?;
            let im = if a.len() == 2 {
                a[1].as_f64()
                    .ok_or_else(|| crate::Error::Validation("bad imaginary part".into()))?
            } else {
                0.0
            };
            Ok(Cx::new(re, im))
        }
        _ => Err(crate::Error::Validation(
            "expected a number or an [re, im] pair".into(),
        )),
    }
}

pub fn cx_to_value(c: Cx) -> serde_json::Value {
    serde_json::json!([c.re, c.im])
}
