//! Weight vectors on `k`-subsets and the lineality space.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::rational::Rational;
use crate::subset::{self, binomial, lex_rank, KSubset};

/// A finite rational value for every `k`-subset of `[n]`, stored in lex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    k: u32,
    n: u32,
    values: Vec<Rational>,
}

impl WeightVector {
    pub fn new(k: u32, n: u32, values: Vec<Rational>) -> Result<Self> {
        subset::enumerate_ksubsets(k, n)?;
        let expected = binomial(n as u64, k as u64) as usize;
        if values.len() != expected {
            return Err(Error::param(alloc::format!(
                "weight for ({k}, {n}) needs {expected} entries, got {}",
                values.len()
            )));
        }
        Ok(WeightVector { k, n, values })
    }

    pub fn zero(k: u32, n: u32) -> Result<Self> {
        let len = subset::enumerate_ksubsets(k, n)?.len();
        Ok(WeightVector {
            k,
            n,
            values: vec![Rational::zero(); len],
        })
    }

    pub fn from_fn(k: u32, n: u32, mut f: impl FnMut(&KSubset) -> Rational) -> Result<Self> {
        let values = subset::enumerate_ksubsets(k, n)?.iter().map(&mut f).collect();
        Ok(WeightVector { k, n, values })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn subsets(&self) -> Vec<KSubset> {
        subset::enumerate_ksubsets(self.k, self.n).expect("validated on construction")
    }

    /// Value on `s`. Panics if `s` is not a `k`-subset of `[n]`.
    pub fn get(&self, s: &KSubset) -> &Rational {
        assert_eq!(s.k(), self.k as usize, "subset {s} has the wrong size");
        &self.values[lex_rank(s, self.n)]
    }

    pub fn set(&mut self, s: &KSubset, v: Rational) {
        assert_eq!(s.k(), self.k as usize, "subset {s} has the wrong size");
        let i = lex_rank(s, self.n);
        self.values[i] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (KSubset, &Rational)> {
        self.subsets().into_iter().zip(self.values.iter())
    }

    /// `w'(S) = w(S) + Σ_{i∈S} a_i`.
    pub fn lineality_shift(&self, a: &[Rational]) -> Result<Self> {
        if a.len() != self.n as usize {
            return Err(Error::param(alloc::format!(
                "shift needs {} coordinates, got {}",
                self.n,
                a.len()
            )));
        }
        let values = self
            .iter()
            .map(|(s, v)| s.elements().fold(v.clone(), |acc, i| acc + &a[i as usize - 1]))
            .collect();
        Ok(WeightVector {
            values,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WeightVector {
            values: self.values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &WeightVector) -> Self {
        assert_eq!((self.k, self.n), (other.k, other.n));
        WeightVector {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Relabels the ground set: `w'(σ(S)) = w(S)` with `σ(i) = perm[i - 1]`.
    pub fn permute(&self, perm: &[u32]) -> Self {
        let mut out = self.clone();
        for (s, v) in self.iter() {
            out.set(&s.permute(perm), v.clone());
        }
        out
    }

    /// Canonical representative modulo the lineality space.
    ///
    /// The anchors are the lex-first subsets whose incidence vectors are
    /// linearly independent; the result vanishes on all of them.
    pub fn normalize(&self) -> Self {
        let anchors = lineality_anchors(self.k, self.n);
        let rows: Vec<Vec<Rational>> = anchors
            .iter()
            .map(|s| s.incidence().into_iter().map(|x| Rational::from_integer(x.into())).collect())
            .collect();
        let rhs: Vec<Rational> = anchors.iter().map(|s| -self.get(s).clone()).collect();
        let a = linalg::solve(&rows, &rhs).expect("anchor rows are independent");
        self.lineality_shift(&a).expect("length matches n")
    }
}

/// Anchor family used by [`WeightVector::normalize`].
pub fn lineality_anchors(k: u32, n: u32) -> Vec<KSubset> {
    let mut chosen: Vec<KSubset> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for s in subset::enumerate_ksubsets(k, n).expect("valid (k, n)") {
        let row: Vec<Rational> = s
            .incidence()
            .into_iter()
            .map(|x| Rational::from_integer(x.into()))
            .collect();
        rows.push(row);
        if Echelon::new(&rows, n as usize).rank() == rows.len() {
            chosen.push(s);
            if chosen.len() == n as usize {
                break;
            }
        } else {
            rows.pop();
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ks(e: &[u32], n: u32) -> KSubset {
        KSubset::new(e, n).unwrap()
    }

    #[test]
    fn shift_examples() {
        let w = WeightVector::zero(2, 3).unwrap();
        assert_eq!(w.lineality_shift(&[int(0), int(0), int(0)]).unwrap(), w);
        let s = w.lineality_shift(&[int(1), int(0), int(0)]).unwrap();
        assert_eq!(s.values(), &[int(1), int(1), int(0)]);
        let w = WeightVector::new(2, 3, vec![int(1), int(2), int(3)]).unwrap();
        let c = w.lineality_shift(&vec![frac(1, 2); 3]).unwrap();
        assert_eq!(c.values(), &[int(2), int(3), int(4)]);
        assert!(w.lineality_shift(&[int(1)]).is_err());
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(WeightVector::new(2, 4, vec![int(0); 5]).is_err());
    }

    #[test]
    fn normalize_kills_lineality() {
        let z = WeightVector::zero(3, 6).unwrap();
        assert_eq!(z.normalize(), z);
        let a: Vec<Rational> = (1..=6).map(|i| frac(i * i - 3, 7)).collect();
        assert_eq!(z.lineality_shift(&a).unwrap().normalize(), z);
    }

    #[test]
    fn anchors_are_n_independent_subsets() {
        for (k, n) in [(2, 4), (3, 6), (4, 8), (1, 5), (4, 5)] {
            assert_eq!(lineality_anchors(k, n).len(), n as usize);
        }
        assert_eq!(lineality_anchors(3, 3).len(), 1);
    }

    #[test]
    fn permute_moves_values() {
        let mut w = WeightVector::zero(2, 4).unwrap();
        w.set(&ks(&[1, 2], 4), int(5));
        let p = w.permute(&[3, 4, 1, 2]);
        assert_eq!(p.get(&ks(&[3, 4], 4)), &int(5));
        assert_eq!(p.get(&ks(&[1, 2], 4)), &int(0));
    }
}
