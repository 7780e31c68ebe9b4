//! Worked examples and tables bundled with the crate.

use std::collections::BTreeMap;

use dressian_core::arrangement::AbstractArrangement;
use dressian_core::subset::KSubset;
use dressian_core::tree::Caterpillar;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::format::WeightDoc;

const DR36: &str = include_str!("../fixtures/dr36_cones.json");
const DR25: &str = include_str!("../fixtures/dr25.json");
const DELTA48: &str = include_str!("../fixtures/delta48.json");

#[derive(Debug, Clone, Deserialize)]
pub struct ConeFixture {
    pub name: String,
    /// `T_1, ..., T_n` in caterpillar notation.
    pub trees: Vec<String>,
    pub cherries: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct NeighbourFixture {
    pub name: String,
    pub cherries: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct AdjacencyFixture {
    /// Name of the cone in `cones` whose class the source belongs to.
    pub class: String,
    pub neighbours: Vec<NeighbourFixture>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Dr36 {
    pub k: u32,
    pub n: u32,
    pub cones: Vec<ConeFixture>,
    pub adjacent_to_cone0: AdjacencyFixture,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Dr25 {
    pub k: u32,
    pub n: u32,
    pub tree: String,
    pub splits: Vec<String>,
    pub weight: WeightDoc,
    pub cells: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Delta48 {
    pub weight: WeightDoc,
    pub contraction_label: u32,
    pub contracted_weight: WeightDoc,
    /// Maximal cells as positions in the weight's entry order.
    pub cells: Vec<Vec<usize>>,
}

pub fn dr36() -> Dr36 {
    serde_json::from_str(DR36).expect("bundled fixture parses")
}

pub fn dr25() -> Dr25 {
    serde_json::from_str(DR25).expect("bundled fixture parses")
}

pub fn delta48() -> Delta48 {
    serde_json::from_str(DELTA48).expect("bundled fixture parses")
}

/// Reads a digit string such as `"125"` as a subset of `[n]`.
pub fn digits(s: &str, n: u32) -> Result<KSubset> {
    let e: Vec<u32> = s
        .chars()
        .map(|c| c.to_digit(10).ok_or_else(|| Error::format(format!("bad subset {s:?}"))))
        .collect::<Result<_>>()?;
    Ok(KSubset::new(&e, n)?)
}

impl ConeFixture {
    pub fn arrangement(&self, n: u32) -> Result<AbstractArrangement> {
        let mut trees = BTreeMap::new();
        for (i, s) in self.trees.iter().enumerate() {
            let t = Caterpillar::parse(s)?.to_tree()?;
            trees.insert(KSubset::new(&[i as u32 + 1], n)?, t);
        }
        Ok(AbstractArrangement::new(3, n, trees)?)
    }

    pub fn cherry_sets(&self, n: u32) -> Result<Vec<KSubset>> {
        let mut v: Vec<KSubset> = self.cherries.iter().map(|c| digits(c, n)).collect::<Result<_>>()?;
        v.sort();
        Ok(v)
    }
}

impl Dr36 {
    pub fn cone(&self, name: &str) -> Option<&ConeFixture> {
        self.cones.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_load() {
        let d = dr36();
        assert_eq!(d.cones.len(), 7);
        for c in &d.cones {
            c.arrangement(d.n).unwrap();
        }
        assert_eq!(d.adjacent_to_cone0.neighbours.len(), 8);
        assert!(d.cone(&d.adjacent_to_cone0.class).is_some());
        assert_eq!(dr25().weight.to_weight().unwrap().values().len(), 10);
        let f = delta48();
        assert_eq!(f.weight.to_weight().unwrap().values().len(), 70);
        assert_eq!(f.contracted_weight.to_weight().unwrap().values().len(), 35);
        assert_eq!(f.cells.len(), 5);
    }
}
