//! JSON documents for weights, subdivisions, arrangements and fans.
//!
//! Every number that is not an index is a rational string (`"3"`, `"-5/4"`).
//! Plain JSON integers are accepted on input as well.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use dressian_core::arrangement::TreeArrangement;
use dressian_core::rational::{self, Rational};
use dressian_core::subdivision::{is_matroid_cell, MatroidalSubdivision};
use dressian_core::subset::{enumerate_ksubsets, KSubset};
use dressian_core::WeightVector;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::newick;

/// An exact rational serialized as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Q(rational::int(v))),
            Raw::Text(s) => rational::parse(&s)
                .map(Q)
                .ok_or_else(|| serde::de::Error::custom(format!("not an exact rational: {s:?}"))),
        }
    }
}

/// Order in which a weight file lists its entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    #[default]
    Lex,
    Colex,
    Revlex,
    Revcolex,
}

impl Ordering {
    pub const ALL: [Ordering; 4] = [Ordering::Lex, Ordering::Colex, Ordering::Revlex, Ordering::Revcolex];

    pub fn subsets(self, k: u32, n: u32) -> Result<Vec<KSubset>> {
        let mut v = enumerate_ksubsets(k, n)?;
        let colex = |v: &mut Vec<KSubset>| {
            v.sort_by_key(|s| {
                let mut e = s.to_vec();
                e.reverse();
                e
            })
        };
        match self {
            Ordering::Lex => {}
            Ordering::Colex => colex(&mut v),
            Ordering::Revlex => v.reverse(),
            Ordering::Revcolex => {
                colex(&mut v);
                v.reverse();
            }
        }
        Ok(v)
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ordering::Lex => "lex",
            Ordering::Colex => "colex",
            Ordering::Revlex => "revlex",
            Ordering::Revcolex => "revcolex",
        })
    }
}

impl FromStr for Ordering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.into()))
            .map_err(|_| Error::format(format!("unknown ordering {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightDoc {
    pub k: u32,
    pub n: u32,
    #[serde(default)]
    pub ordering: Ordering,
    pub values: Vec<Q>,
}

impl WeightDoc {
    pub fn to_weight(&self) -> Result<WeightVector> {
        let subsets = self.ordering.subsets(self.k, self.n)?;
        if subsets.len() != self.values.len() {
            return Err(Error::format(format!(
                "weight for ({}, {}) needs {} values, got {}",
                self.k,
                self.n,
                subsets.len(),
                self.values.len()
            )));
        }
        let mut w = WeightVector::zero(self.k, self.n)?;
        for (s, v) in subsets.iter().zip(&self.values) {
            w.set(s, v.0.clone());
        }
        Ok(w)
    }

    pub fn from_weight(w: &WeightVector, ordering: Ordering) -> Self {
        let subsets = ordering.subsets(w.k(), w.n()).expect("valid weight shape");
        WeightDoc {
            k: w.k(),
            n: w.n(),
            ordering,
            values: subsets.iter().map(|s| Q(w.get(s).clone())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionDoc {
    pub k: u32,
    pub n: u32,
    pub cells: Vec<Vec<Vec<u32>>>,
    /// Basis-exchange verdict per cell, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matroidal: Option<Vec<bool>>,
}

impl SubdivisionDoc {
    pub fn from_subdivision(s: &MatroidalSubdivision, certify: bool) -> Self {
        SubdivisionDoc {
            k: s.k(),
            n: s.n(),
            cells: s
                .cells()
                .iter()
                .map(|c| c.bases().iter().map(|b| b.to_vec()).collect())
                .collect(),
            matroidal: certify.then(|| s.cells().iter().map(is_matroid_cell).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEntry {
    pub index: Vec<u32>,
    pub tree: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementDoc {
    pub k: u32,
    pub n: u32,
    pub trees: Vec<TreeEntry>,
}

impl ArrangementDoc {
    pub fn from_arrangement(a: &TreeArrangement) -> Self {
        ArrangementDoc {
            k: a.k(),
            n: a.n(),
            trees: a
                .trees()
                .iter()
                .map(|(j, t)| TreeEntry {
                    index: j.to_vec(),
                    tree: newick::emit(t),
                })
                .collect(),
        }
    }

    pub fn to_arrangement(&self) -> Result<TreeArrangement> {
        let mut trees = BTreeMap::new();
        for e in &self.trees {
            let j = KSubset::new(&e.index, self.n)?;
            if trees.insert(j, newick::parse(&e.tree)?).is_some() {
                return Err(Error::format(format!("index {j} listed twice")));
            }
        }
        Ok(TreeArrangement::new(self.k, self.n, trees)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDoc {
    pub k: u32,
    pub n: u32,
    pub rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub lineality: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("documents serialize")
}
