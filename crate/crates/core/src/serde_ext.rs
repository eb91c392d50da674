//! Serde helpers for extended reals: `±inf` and `nan` are written as strings because JSON
//! numbers cannot carry them.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::Deserialize;

use crate::scalar::Scalar;

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Num(f64),
    Text(String),
}

fn decode<E: de::Error>(r: Repr) -> Result<f64, E> {
    match r {
        Repr::Num(x) => Ok(x),
        Repr::Text(s) => match s.as_str() {
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            "nan" => Ok(f64::NAN),
            other => Err(E::custom(format!(
                "expected a number, \"inf\", \"-inf\" or \"nan\", got {other:?}"
            ))),
        },
    }
}

fn encode<S: Serializer>(x: f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

pub mod extended {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
        encode(x.as_f64(), s)
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        Ok(T::lit(decode(Repr::deserialize(d)?)?))
    }
}

pub mod extended_opt {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => encode(v.as_f64(), s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<Option<T>, D::Error> {
        match Option::<Repr>::deserialize(d)? {
            Some(r) => Ok(Some(T::lit(decode(r)?))),
            None => Ok(None),
        }
    }
}
