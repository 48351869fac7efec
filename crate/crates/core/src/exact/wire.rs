//! JSON encoding: a scalar is `[reNum, reDen, imNum, imDen]`; each part is a
//! JSON integer when it fits in `i64`, otherwise a decimal string.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::{ExactMatrix, GaussianRational, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntOrString::Int(n) => Ok(n.into()),
            IntOrString::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| E::custom(format!("invalid integer string {s:?}"))),
        }
    }
}

fn put_int<S: SerializeSeq>(seq: &mut S, n: &BigInt) -> Result<(), S::Error> {
    match n.to_i64() {
        Some(v) => seq.serialize_element(&v),
        None => seq.serialize_element(&n.to_string()),
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        put_int(&mut seq, self.re().numer())?;
        put_int(&mut seq, self.re().denom())?;
        put_int(&mut seq, self.im().numer())?;
        put_int(&mut seq, self.im().denom())?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = GaussianRational;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("[reNum, reDen, imNum, imDen]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut parts = Vec::with_capacity(4);
                for k in 0..4 {
                    let p: IntOrString = seq
                        .next_element()?
                        .ok_or_else(|| de::Error::invalid_length(k, &self))?;
                    parts.push(p.into_bigint::<A::Error>()?);
                }
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(5, &self));
                }
                if parts[1].is_zero() || parts[3].is_zero() {
                    return Err(de::Error::custom("zero denominator"));
                }
                let im = Rational::new(parts[2].clone(), parts[3].clone());
                let re = Rational::new(parts[0].clone(), parts[1].clone());
                Ok(GaussianRational::new(re, im))
            }
        }
        d.deserialize_seq(V)
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows()))?;
        for r in 0..self.rows() {
            seq.serialize_element(self.row(r))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<GaussianRational>> = Vec::deserialize(d)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(de::Error::custom("ragged matrix rows"));
        }
        Ok(ExactMatrix::from_rows(rows))
    }
}
