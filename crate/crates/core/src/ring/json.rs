//! Canonical JSON form:
//! `{"num":[{"c":"<int>","e":{"b":k,"x":{"i":e},...}}],"den":{"x":{..},"t":{..},"y":{..}}}`.
//!
//! Terms appear in the canonical monomial order, families in the order
//! `b, x, t, y`, indices ascending; absent families are omitted.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::int::Int;
use super::loc::LocElem;
use super::mono::{Family, Monomial, Var, MAX_INDEX};
use super::poly::MPoly;
use super::RingError;

const INDEXED: [Family; 3] = [Family::X, Family::T, Family::Y];

struct IndexMap<'a>(&'a [(usize, u32)]);

impl Serialize for IndexMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (i, e) in self.0 {
            m.serialize_entry(&i.to_string(), e)?;
        }
        m.end()
    }
}

fn grouped(pairs: impl Iterator<Item = (Var, u32)>) -> (u32, [Vec<(usize, u32)>; 3]) {
    let mut beta = 0;
    let mut fams: [Vec<(usize, u32)>; 3] = Default::default();
    for (v, e) in pairs {
        match v.family {
            Family::Beta => beta = e,
            Family::X => fams[0].push((v.index as usize, e)),
            Family::T => fams[1].push((v.index as usize, e)),
            Family::Y => fams[2].push((v.index as usize, e)),
        }
    }
    (beta, fams)
}

struct Exps<'a>(&'a Monomial);

impl Serialize for Exps<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (beta, fams) = grouped(self.0.support());
        let mut m = s.serialize_map(None)?;
        if beta > 0 {
            m.serialize_entry("b", &beta)?;
        }
        for (fam, list) in INDEXED.iter().zip(fams.iter()) {
            if !list.is_empty() {
                m.serialize_entry(&fam.letter().to_string(), &IndexMap(list))?;
            }
        }
        m.end()
    }
}

struct Term<'a>(&'a Monomial, &'a Int);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("c", &self.1.to_string())?;
        m.serialize_entry("e", &Exps(self.0))?;
        m.end()
    }
}

struct Terms<'a>(&'a MPoly);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.terms().iter().map(|(m, c)| Term(m, c)))
    }
}

struct Den<'a>(&'a LocElem);

impl Serialize for Den<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (_, fams) = grouped(self.0.den().into_iter());
        let mut m = s.serialize_map(None)?;
        for (fam, list) in INDEXED.iter().zip(fams.iter()) {
            if !list.is_empty() {
                m.serialize_entry(&fam.letter().to_string(), &IndexMap(list))?;
            }
        }
        m.end()
    }
}

impl Serialize for LocElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("num", &Terms(self.num()))?;
        m.serialize_entry("den", &Den(self))?;
        m.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExps {
    #[serde(default)]
    b: u32,
    #[serde(default)]
    x: BTreeMap<String, u32>,
    #[serde(default)]
    t: BTreeMap<String, u32>,
    #[serde(default)]
    y: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    c: String,
    e: RawExps,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawDen {
    #[serde(default)]
    x: BTreeMap<String, u32>,
    #[serde(default)]
    t: BTreeMap<String, u32>,
    #[serde(default)]
    y: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLoc {
    num: Vec<RawTerm>,
    #[serde(default)]
    den: RawDen,
}

fn indexed(
    family: Family,
    map: &BTreeMap<String, u32>,
) -> Result<Vec<(Var, u32)>, RingError> {
    map.iter()
        .map(|(k, &e)| {
            let i: usize = k
                .parse()
                .map_err(|_| RingError::Json(format!("bad index '{k}'")))?;
            if !(1..=MAX_INDEX).contains(&i) {
                return Err(RingError::Json(format!("index {i} out of range")));
            }
            Ok((Var::new(family, i), e))
        })
        .collect()
}

impl TryFrom<RawLoc> for LocElem {
    type Error = RingError;
    fn try_from(raw: RawLoc) -> Result<Self, RingError> {
        let mut terms = Vec::with_capacity(raw.num.len());
        for t in raw.num {
            let c: Int = t
                .c
                .parse()
                .map_err(|_| RingError::Json(format!("bad coefficient '{}'", t.c)))?;
            let mut m = Monomial::ONE;
            m.set_exp(Var::BETA, t.e.b);
            for (fam, map) in [(Family::X, &t.e.x), (Family::T, &t.e.t), (Family::Y, &t.e.y)] {
                for (v, e) in indexed(fam, map)? {
                    m.set_exp(v, e);
                }
            }
            terms.push((m, c));
        }
        let mut den = Vec::new();
        for (fam, map) in [(Family::X, &raw.den.x), (Family::T, &raw.den.t), (Family::Y, &raw.den.y)] {
            den.extend(indexed(fam, map)?);
        }
        Ok(LocElem::from_parts(MPoly::from_terms(terms), &den))
    }
}

impl<'de> Deserialize<'de> for LocElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawLoc::deserialize(d)?;
        LocElem::try_from(raw).map_err(D::Error::custom)
    }
}

impl LocElem {
    /// Canonical compact JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializing a ring element cannot fail")
    }

    pub fn from_json(s: &str) -> Result<LocElem, RingError> {
        serde_json::from_str(s).map_err(|e| RingError::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_elem;

    #[test]
    fn canonical_json_round_trip() {
        let e = parse_elem("(1+b*t1)/(1+b*y1) + 3*x2^2*t10").unwrap();
        let s = e.to_json();
        let back = LocElem::from_json(&s).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.to_json(), s);
        assert_eq!(
            LocElem::ominus_vars(Var::t(1), Var::y(1)).to_json(),
            r#"{"num":[{"c":"-1","e":{"y":{"1":1}}},{"c":"1","e":{"t":{"1":1}}}],"den":{"y":{"1":1}}}"#
        );
        assert_eq!(LocElem::zero().to_json(), r#"{"num":[],"den":{}}"#);
    }

    #[test]
    fn rejects_bad_json() {
        assert!(LocElem::from_json(r#"{"num":[{"c":"x","e":{}}]}"#).is_err());
        assert!(LocElem::from_json(r#"{"num":[{"c":"1","e":{"x":{"0":1}}}]}"#).is_err());
    }
}
