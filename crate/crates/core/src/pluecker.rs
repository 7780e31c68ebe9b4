//! Three-term tropical Plücker relations, Dressian membership and cone
//! signatures of the Plücker fan (min convention).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::{subsets_of, KSubset};
use crate::weight::WeightVector;

/// The relation `p_{Aij} p_{Akl} - p_{Aik} p_{Ajl} + p_{Ail} p_{Ajk}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThreeTermRelation {
    pub base: KSubset,
    pub quad: [u32; 4],
}

impl ThreeTermRelation {
    /// The three term pairs in the fixed order `{Aij, Akl}`, `{Aik, Ajl}`,
    /// `{Ail, Ajk}`.
    pub fn terms(&self) -> [(KSubset, KSubset); 3] {
        let [i, j, k, l] = self.quad;
        let a = self.base;
        let p = |x: u32, y: u32| a.with(x).with(y);
        [
            (p(i, j), p(k, l)),
            (p(i, k), p(j, l)),
            (p(i, l), p(j, k)),
        ]
    }
}

impl fmt::Display for ThreeTermRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.quad;
        write!(f, "A={} quad=({i},{j},{k},{l})", self.base)
    }
}

/// All three-term relations of `Dr(k, n)`: bases in lex order, then quads in
/// lex order. Requires `k >= 2` and `n - k >= 2`.
pub fn enumerate_relations(k: u32, n: u32) -> Result<Vec<ThreeTermRelation>> {
    if k < 2 || n < k + 2 {
        return Err(Error::param(alloc::format!(
            "three-term relations need k >= 2 and n - k >= 2, got k = {k}, n = {n}"
        )));
    }
    Ok(relations_unchecked(k, n))
}

pub(crate) fn relations_unchecked(k: u32, n: u32) -> Vec<ThreeTermRelation> {
    if k < 2 || n < k + 2 {
        return Vec::new();
    }
    let ground: Vec<u32> = (1..=n).collect();
    let mut out = Vec::new();
    for base in subsets_of(&ground, k as usize - 2, n) {
        let rest: Vec<u32> = ground.iter().copied().filter(|&x| !base.contains(x)).collect();
        for q in subsets_of(&rest, 4, n) {
            let v = q.to_vec();
            out.push(ThreeTermRelation {
                base,
                quad: [v[0], v[1], v[2], v[3]],
            });
        }
    }
    out
}

/// The three term values of `r` at `w`, in the fixed term order.
pub fn relation_values(w: &WeightVector, r: &ThreeTermRelation) -> [Rational; 3] {
    r.terms().map(|(x, y)| w.get(&x) + w.get(&y))
}

/// Which terms attain the minimum of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TiePattern {
    /// All three terms are equal.
    AllEqual,
    /// Terms 1 and 2 tie strictly below term 3.
    Pair12,
    /// Terms 1 and 3 tie strictly below term 2.
    Pair13,
    /// Terms 2 and 3 tie strictly below term 1.
    Pair23,
}

impl TiePattern {
    pub const ALL: [TiePattern; 4] = [
        TiePattern::Pair12,
        TiePattern::Pair13,
        TiePattern::Pair23,
        TiePattern::AllEqual,
    ];

    /// Classifies three values; `None` when the minimum is unique.
    pub fn classify<T: Ord>(v: &[T; 3]) -> Option<TiePattern> {
        let min = v.iter().min()?;
        let at = [&v[0] == min, &v[1] == min, &v[2] == min];
        match at {
            [true, true, true] => Some(TiePattern::AllEqual),
            [true, true, false] => Some(TiePattern::Pair12),
            [true, false, true] => Some(TiePattern::Pair13),
            [false, true, true] => Some(TiePattern::Pair23),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            TiePattern::AllEqual => 'E',
            TiePattern::Pair12 => 'a',
            TiePattern::Pair13 => 'b',
            TiePattern::Pair23 => 'c',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'E' => TiePattern::AllEqual,
            'a' => TiePattern::Pair12,
            'b' => TiePattern::Pair13,
            'c' => TiePattern::Pair23,
            _ => return None,
        })
    }

    /// Term indices that attain the minimum.
    pub fn minimizers(self) -> &'static [usize] {
        match self {
            TiePattern::AllEqual => &[0, 1, 2],
            TiePattern::Pair12 => &[0, 1],
            TiePattern::Pair13 => &[0, 2],
            TiePattern::Pair23 => &[1, 2],
        }
    }

    /// The term strictly above the tied pair, if any.
    pub fn loser(self) -> Option<usize> {
        match self {
            TiePattern::AllEqual => None,
            TiePattern::Pair12 => Some(2),
            TiePattern::Pair13 => Some(1),
            TiePattern::Pair23 => Some(0),
        }
    }
}

/// First relation whose minimum is attained only once, if any.
pub fn dressian_violation(w: &WeightVector) -> Option<ThreeTermRelation> {
    relations_unchecked(w.k(), w.n())
        .into_iter()
        .find(|r| TiePattern::classify(&relation_values(w, r)).is_none())
}

pub fn is_in_dressian(w: &WeightVector) -> bool {
    dressian_violation(w).is_none()
}

/// Identifies a cone of the Plücker fan: one tie pattern per relation, in
/// [`enumerate_relations`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeSignature {
    pub k: u32,
    pub n: u32,
    pub patterns: Vec<TiePattern>,
}

impl ConeSignature {
    pub fn relations(&self) -> Vec<ThreeTermRelation> {
        relations_unchecked(self.k, self.n)
    }

    pub fn count_all_equal(&self) -> usize {
        self.patterns.iter().filter(|p| **p == TiePattern::AllEqual).count()
    }

    /// Parses the one-character-per-relation serialization.
    pub fn parse(k: u32, n: u32, s: &str) -> Result<Self> {
        let patterns = s
            .chars()
            .map(|c| {
                TiePattern::from_char(c)
                    .ok_or_else(|| Error::param(alloc::format!("bad signature character {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let expected = relations_unchecked(k, n).len();
        if patterns.len() != expected {
            return Err(Error::param(alloc::format!(
                "signature for ({k}, {n}) needs {expected} characters, got {}",
                patterns.len()
            )));
        }
        Ok(ConeSignature { k, n, patterns })
    }
}

impl fmt::Display for ConeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.patterns.iter().map(|p| p.as_char()).collect();
        f.write_str(&s)
    }
}

impl FromStr for TiePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next().and_then(TiePattern::from_char), chars.next()) {
            (Some(p), None) => Ok(p),
            _ => Err(Error::param(alloc::format!("bad tie pattern {s:?}"))),
        }
    }
}

pub fn cone_signature(w: &WeightVector) -> Result<ConeSignature> {
    let mut patterns = Vec::new();
    for r in relations_unchecked(w.k(), w.n()) {
        match TiePattern::classify(&relation_values(w, &r)) {
            Some(p) => patterns.push(p),
            None => return Err(Error::NotInDressian { relation: r }),
        }
    }
    Ok(ConeSignature {
        k: w.k(),
        n: w.n(),
        patterns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn relation_counts() {
        let r = enumerate_relations(2, 4).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].base, KSubset::empty(4));
        assert_eq!(r[0].quad, [1, 2, 3, 4]);
        assert_eq!(enumerate_relations(3, 6).unwrap().len(), 30);
        assert_eq!(enumerate_relations(4, 8).unwrap().len(), 420);
        assert!(enumerate_relations(3, 4).is_err());
        assert!(enumerate_relations(1, 5).is_err());
    }

    #[test]
    fn values_in_fixed_order() {
        let mut w = WeightVector::zero(2, 4).unwrap();
        w.set(&KSubset::new(&[1, 2], 4).unwrap(), int(1));
        let r = enumerate_relations(2, 4).unwrap()[0];
        assert_eq!(relation_values(&w, &r), [int(1), int(0), int(0)]);
        let z = WeightVector::zero(2, 4).unwrap();
        assert_eq!(relation_values(&z, &r), [int(0), int(0), int(0)]);
    }

    #[test]
    fn membership_examples() {
        assert!(is_in_dressian(&WeightVector::zero(2, 4).unwrap()));
        let mut w = WeightVector::zero(2, 4).unwrap();
        w.set(&KSubset::new(&[1, 2], 4).unwrap(), int(-1));
        let bad = dressian_violation(&w).unwrap();
        assert_eq!(bad.quad, [1, 2, 3, 4]);
        assert!(matches!(cone_signature(&w), Err(Error::NotInDressian { .. })));
        // no relations at all: vacuously in the Dressian
        assert!(is_in_dressian(&WeightVector::zero(2, 3).unwrap()));
    }

    #[test]
    fn classify_patterns() {
        assert_eq!(TiePattern::classify(&[1, 1, 1]), Some(TiePattern::AllEqual));
        assert_eq!(TiePattern::classify(&[0, 0, 3]), Some(TiePattern::Pair12));
        assert_eq!(TiePattern::classify(&[0, 3, 0]), Some(TiePattern::Pair13));
        assert_eq!(TiePattern::classify(&[3, 0, 0]), Some(TiePattern::Pair23));
        assert_eq!(TiePattern::classify(&[0, 1, 1]), None);
    }

    #[test]
    fn signature_string_roundtrip() {
        let w = WeightVector::zero(3, 6).unwrap();
        let s = cone_signature(&w).unwrap();
        let text = alloc::format!("{s}");
        assert_eq!(text, "E".repeat(30));
        assert_eq!(ConeSignature::parse(3, 6, &text).unwrap(), s);
        assert!(ConeSignature::parse(3, 6, "Ea").is_err());
        assert!(ConeSignature::parse(2, 4, "x").is_err());
    }
}
