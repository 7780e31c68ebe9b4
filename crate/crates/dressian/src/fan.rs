//! Ingestion of externally computed fans (rays, lineality, cones).

use dressian_core::arrangement::{arrangement_from_weight, TreeArrangement};
use dressian_core::pluecker::{cone_signature, dressian_violation};
use dressian_core::rational;
use dressian_core::subset::binomial;
use dressian_core::{ConeSignature, WeightVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{ArrangementDoc, FanDoc, Ordering, WeightDoc};

#[derive(Debug, Clone)]
pub struct IngestedCone {
    pub rays: Vec<usize>,
    /// Sum of the cone's rays plus the sum of the lineality generators.
    pub point: WeightVector,
    pub signature: Option<ConeSignature>,
    pub arrangement: Option<TreeArrangement>,
}

fn check_vector(v: &[i64], len: usize, what: &str) -> Result<()> {
    if v.len() != len {
        return Err(Error::format(format!("{what} has {} entries, expected {len}", v.len())));
    }
    Ok(())
}

pub fn ingest(doc: &FanDoc, ordering: Ordering) -> Result<Vec<IngestedCone>> {
    let subsets = ordering.subsets(doc.k, doc.n)?;
    let len = binomial(doc.n as u64, doc.k as u64) as usize;
    for (i, r) in doc.rays.iter().enumerate() {
        check_vector(r, len, &format!("ray {i}"))?;
    }
    for (i, l) in doc.lineality.iter().enumerate() {
        check_vector(l, len, &format!("lineality vector {i}"))?;
    }
    let mut out = Vec::new();
    for (ci, cone) in doc.cones.iter().enumerate() {
        if cone.is_empty() {
            return Err(Error::format(format!("cone {ci} has no rays")));
        }
        let mut sum = vec![0i64; len];
        for &r in cone {
            let ray = doc
                .rays
                .get(r)
                .ok_or_else(|| Error::format(format!("cone {ci} uses ray {r}, but there are {} rays", doc.rays.len())))?;
            for (s, x) in sum.iter_mut().zip(ray) {
                *s += x;
            }
        }
        for l in &doc.lineality {
            for (s, x) in sum.iter_mut().zip(l) {
                *s += x;
            }
        }
        let mut point = WeightVector::zero(doc.k, doc.n)?;
        for (s, v) in subsets.iter().zip(&sum) {
            point.set(s, rational::int(*v));
        }
        let (signature, arrangement) = if dressian_violation(&point).is_none() {
            let sig = cone_signature(&point)?;
            let arr = if doc.k >= 2 && doc.n > doc.k { Some(arrangement_from_weight(&point)?) } else { None };
            (Some(sig), arr)
        } else {
            (None, None)
        };
        out.push(IngestedCone {
            rays: cone.clone(),
            point,
            signature,
            arrangement,
        });
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct ConeReport {
    pub rays: Vec<usize>,
    pub point: WeightDoc,
    pub in_dressian: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<ArrangementDoc>,
}

impl ConeReport {
    pub fn new(c: &IngestedCone) -> Self {
        ConeReport {
            rays: c.rays.clone(),
            point: WeightDoc::from_weight(&c.point, Ordering::Lex),
            in_dressian: c.signature.is_some(),
            signature: c.signature.as_ref().map(|s| s.to_string()),
            arrangement: c.arrangement.as_ref().map(ArrangementDoc::from_arrangement),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dr24_fan() -> FanDoc {
        // the three quartet splits, negated; lineality from the four
        // coordinate directions
        FanDoc {
            k: 2,
            n: 4,
            rays: vec![
                vec![0, -1, -1, -1, -1, 0],
                vec![-1, 0, -1, -1, 0, -1],
                vec![-1, -1, 0, 0, -1, -1],
            ],
            lineality: vec![vec![1, 1, 1, 0, 0, 0], vec![1, 0, 0, 1, 1, 0], vec![0, 1, 0, 1, 0, 1], vec![0, 0, 1, 0, 1, 1]],
            cones: vec![vec![0], vec![1], vec![2]],
        }
    }

    #[test]
    fn quartet_fan() {
        let cones = ingest(&dr24_fan(), Ordering::Lex).unwrap();
        let sigs: Vec<String> = cones.iter().map(|c| c.signature.as_ref().unwrap().to_string()).collect();
        assert_eq!(sigs, ["c", "b", "a"]);
        assert!(cones.iter().all(|c| c.arrangement.as_ref().unwrap().trees().len() == 1));
    }

    #[test]
    fn bad_fans_rejected() {
        let mut f = dr24_fan();
        f.cones.push(vec![7]);
        assert!(ingest(&f, Ordering::Lex).is_err());
        let mut f = dr24_fan();
        f.rays[0].pop();
        assert!(ingest(&f, Ordering::Lex).is_err());
    }
}
