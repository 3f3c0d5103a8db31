//! JSON codecs.
//!
//! Rationals are written as `{"num": "<decimal>", "den": "<decimal>"}` in
//! lowest terms with a positive denominator. Polynomials are written as
//! `{"vars": [...], "terms": [{"num", "den", "exps"}]}` with terms in
//! descending lexicographic order. Decoding is lenient about unreduced
//! fractions, zero coefficients and repeated exponent vectors, so
//! decode-then-encode always yields the canonical form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, MultiPoly, Rational, Roster};

const MAX_DIGITS: usize = 4096;
const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RatRepr {
    num: String,
    den: String,
}

impl From<&Rational> for RatRepr {
    fn from(r: &Rational) -> Self {
        RatRepr { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || digits.len() > MAX_DIGITS || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Json(format!("invalid decimal integer {s:?}")));
    }
    Ok(s.parse().expect("validated digits"))
}

impl RatRepr {
    pub(crate) fn to_rational(&self) -> Result<Rational> {
        let n = parse_int(&self.num)?;
        let d = parse_int(&self.den)?;
        if d.is_zero() {
            return Err(Error::Json("zero denominator".into()));
        }
        Ok(Rational::new(n, d))
    }
}

/// `#[serde(with = "json::rational")]`
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatRepr::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        RatRepr::deserialize(d)?.to_rational().map_err(D::Error::custom)
    }
}

/// `#[serde(with = "json::rational_vec")]`
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(RatRepr::from))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<RatRepr>::deserialize(d)?.iter().map(|r| r.to_rational().map_err(D::Error::custom)).collect()
    }
}

/// `#[serde(with = "json::rational_grid")]`
pub mod rational_grid {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|row| row.iter().map(RatRepr::from).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<RatRepr>>::deserialize(d)?
            .iter()
            .map(|row| row.iter().map(|r| r.to_rational().map_err(D::Error::custom)).collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct TermRepr {
    num: String,
    den: String,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

pub(crate) fn terms_repr(p: &MultiPoly) -> Vec<TermRepr> {
    p.terms()
        .map(|(e, c)| TermRepr { num: c.numer().to_string(), den: c.denom().to_string(), exps: e.as_slice().to_vec() })
        .collect()
}

impl From<&MultiPoly> for PolyRepr {
    fn from(p: &MultiPoly) -> Self {
        PolyRepr { vars: p.roster().names().to_vec(), terms: terms_repr(p) }
    }
}

impl PolyRepr {
    fn into_poly(self) -> Result<MultiPoly> {
        let roster = Roster::new(self.vars)?;
        poly_from_terms(&roster, self.terms)
    }
}

pub(crate) fn poly_from_terms(roster: &Roster, terms: Vec<TermRepr>) -> Result<MultiPoly> {
    let mut acc: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
    for t in terms {
        if t.exps.len() != roster.len() {
            return Err(Error::Json(format!(
                "exponent vector of length {} for {} variables",
                t.exps.len(),
                roster.len()
            )));
        }
        if t.exps.iter().any(|&e| e > MAX_EXPONENT) {
            return Err(Error::Json("exponent too large".into()));
        }
        let c = RatRepr { num: t.num, den: t.den }.to_rational()?;
        *acc.entry(ExponentVector::new(t.exps)).or_insert_with(Rational::zero) += c;
    }
    Ok(MultiPoly::from_terms(roster, acc))
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PolyRepr::deserialize(d)?.into_poly().map_err(D::Error::custom)
    }
}

/// Canonical compact JSON encoding of any serializable artifact.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("artifact types serialize infallibly")
}

/// Pretty-printed canonical JSON, used for files written by the CLI.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("artifact types serialize infallibly")
}

pub(crate) fn from_json<'a, T: Deserialize<'a>>(src: &'a str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))
}

pub fn poly_to_json(p: &MultiPoly) -> String {
    to_json(p)
}

pub fn poly_from_json(src: &str) -> Result<MultiPoly> {
    from_json::<PolyRepr>(src)?.into_poly()
}
