//! Splits of the hypersimplex and their common refinements.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{Cmp, LinearProgram, Outcome, Sense};
use crate::rational::{self, Rational};
use crate::subdivision::{Cell, MatroidalSubdivision};
use crate::subset::{self, KSubset};
use crate::tree::{MetricTree, Split};

/// The `(A, B; μ)`-split of `Δ(k, n)`: on the hypersimplex the hyperplane
/// `μ x(A) = (k - μ) x(B)` is `x(A) = k - μ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypersimplexSplit {
    k: u32,
    a: KSubset,
    mu: u32,
}

impl HypersimplexSplit {
    pub fn new(k: u32, n: u32, a: &[u32], mu: u32) -> Result<Self> {
        subset::enumerate_ksubsets(k, n)?;
        let a = KSubset::new(a, n)?;
        if mu == 0 || mu >= k {
            return Err(Error::param(alloc::format!("need 0 < mu < k, got mu = {mu}")));
        }
        let (na, nb) = (a.k() as u32, n - a.k() as u32);
        // x(A) >= k - μ holds on every vertex when |B| <= μ, and x(A) <= k - μ
        // on every vertex when |A| <= k - μ
        if na + mu <= k || nb <= mu {
            return Err(Error::param(alloc::format!(
                "degenerate split ({a};{mu}) of Δ({k}, {n})"
            )));
        }
        Ok(HypersimplexSplit { k, a, mu })
    }

    /// The split of `Δ(2, n)` given by a tree split whose leaves are `[n]`.
    pub fn from_tree_split(s: &Split, n: u32) -> Result<Self> {
        HypersimplexSplit::new(2, n, &s.a.to_vec(), 1)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.a.n()
    }

    pub fn a(&self) -> KSubset {
        self.a
    }

    pub fn b(&self) -> KSubset {
        let full = (1u64 << self.n()) - 1;
        KSubset::from_bits(full & !self.a.bits(), self.n())
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    /// `x(A) - (k - μ)` at the vertex `e_S`.
    fn side_value(&self, s: &KSubset) -> i64 {
        (s.bits() & self.a.bits()).count_ones() as i64 - (self.k - self.mu) as i64
    }
}

impl fmt::Display for HypersimplexSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.a, self.b(), self.mu)
    }
}

/// Vertices on the closed sides `x(A) >= k - μ` and `x(A) <= k - μ`.
pub fn split_subdivision(h: &HypersimplexSplit) -> (Cell, Cell) {
    let all = subset::enumerate_ksubsets(h.k, h.n()).expect("validated on construction");
    let s1 = all.iter().filter(|s| h.side_value(s) >= 0).copied();
    let s2 = all.iter().filter(|s| h.side_value(s) <= 0).copied();
    (
        Cell::new(s1).expect("nondegenerate"),
        Cell::new(s2).expect("nondegenerate"),
    )
}

/// Two splits are compatible when their hyperplanes do not meet in the
/// relative interior of `Δ(k, n)`.
pub fn splits_compatible(h1: &HypersimplexSplit, h2: &HypersimplexSplit) -> Result<bool> {
    if (h1.k, h1.n()) != (h2.k, h2.n()) {
        return Err(Error::param("splits live on different hypersimplices"));
    }
    let n = h1.n() as usize;
    // maximize s subject to s <= x_i <= 1 - s and both hyperplane equations
    let mut lp = LinearProgram::new(n + 1, Sense::Maximize);
    lp.add(
        (0..=n).map(|i| if i < n { Rational::one() } else { Rational::zero() }).collect(),
        Cmp::Eq,
        rational::int(h1.k as i64),
    );
    for h in [h1, h2] {
        let row = (1..=n as u32 + 1)
            .map(|i| if i <= n as u32 && h.a.contains(i) { Rational::one() } else { Rational::zero() })
            .collect();
        lp.add(row, Cmp::Eq, rational::int((h.k - h.mu) as i64));
    }
    for i in 0..n {
        let mut lo = vec![Rational::zero(); n + 1];
        lo[i] = Rational::one();
        lo[n] = -Rational::one();
        lp.add(lo, Cmp::Ge, Rational::zero());
        let mut hi = vec![Rational::zero(); n + 1];
        hi[i] = Rational::one();
        hi[n] = Rational::one();
        lp.add(hi, Cmp::Le, Rational::one());
    }
    lp.bound(n, Cmp::Le, Rational::one());
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = Rational::one();
    lp.objective(obj);
    Ok(match lp.solve() {
        Outcome::Optimal { values, .. } => !values[0].is_positive(),
        _ => true,
    })
}

/// Intersects the sides of all splits and keeps the full-dimensional pieces.
pub fn common_refinement(k: u32, n: u32, splits: &[HypersimplexSplit]) -> Result<MatroidalSubdivision> {
    let all = subset::enumerate_ksubsets(k, n)?;
    for (i, h) in splits.iter().enumerate() {
        if (h.k, h.n()) != (k, n) {
            return Err(Error::param(alloc::format!("split {h} is not a split of Δ({k}, {n})")));
        }
        for g in &splits[..i] {
            if !splits_compatible(g, h)? {
                return Err(Error::param(alloc::format!("splits {g} and {h} are incompatible")));
            }
        }
    }
    let full = (n - 1) as usize;
    let mut cells = vec![Cell::new(all).expect("Δ(k, n) has vertices")];
    for h in splits {
        let mut next = Vec::new();
        for c in &cells {
            for sign in [1, -1] {
                let part = c.bases().iter().filter(|s| sign * h.side_value(s) >= 0);
                if let Ok(piece) = Cell::new(part.copied()) {
                    if piece.dimension() == full {
                        next.push(piece);
                    }
                }
            }
        }
        cells = next;
    }
    Ok(MatroidalSubdivision::new(k, n, cells))
}

/// The splits of `Δ(2, n)` given by the internal edges of a tree on `[n]`.
pub fn hypersimplex_splits_of_tree(t: &MetricTree) -> Result<Vec<HypersimplexSplit>> {
    let leaves = t.leaves();
    let n = leaves.len() as u32;
    if leaves.iter().copied().ne(1..=n) {
        return Err(Error::param("tree leaves must be 1..n"));
    }
    t.splits().iter().map(|s| HypersimplexSplit::from_tree_split(s, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::subdivision::cells_from_tree;
    use crate::tree::{all_trivalent_topologies, Caterpillar};

    fn cell(n: u32, sets: &[&[u32]]) -> Cell {
        Cell::new(sets.iter().map(|s| KSubset::new(s, n).unwrap())).unwrap()
    }

    #[test]
    fn dr25_split_sides() {
        let h = HypersimplexSplit::new(2, 5, &[1, 2], 1).unwrap();
        let (s1, s2) = split_subdivision(&h);
        assert_eq!(s1, cell(5, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5], &[2, 3], &[2, 4], &[2, 5]]));
        assert_eq!(
            s2,
            cell(5, &[&[1, 3], &[1, 4], &[1, 5], &[2, 3], &[2, 4], &[2, 5], &[3, 4], &[3, 5], &[4, 5]])
        );
        assert_eq!(h.to_string(), "(12,345;1)");
    }

    #[test]
    fn compatibility() {
        let h1 = HypersimplexSplit::new(2, 5, &[1, 2], 1).unwrap();
        let h2 = HypersimplexSplit::new(2, 5, &[1, 2, 3], 1).unwrap();
        let h3 = HypersimplexSplit::new(2, 5, &[1, 3], 1).unwrap();
        assert!(splits_compatible(&h1, &h2).unwrap());
        assert!(!splits_compatible(&h1, &h3).unwrap());
        let r = common_refinement(2, 5, &[h1.clone(), h2]).unwrap();
        let t = Caterpillar::new((1, 2), &[3], (4, 5)).to_tree().unwrap();
        assert_eq!(r, cells_from_tree(&t).unwrap());
        assert!(common_refinement(2, 5, &[h1, h3]).is_err());
    }

    #[test]
    fn degenerate_splits_rejected() {
        assert!(HypersimplexSplit::new(2, 5, &[1], 1).is_err());
        assert!(HypersimplexSplit::new(2, 5, &[1, 2, 3, 4], 1).is_err());
        assert!(HypersimplexSplit::new(3, 6, &[1], 2).is_err());
        assert!(HypersimplexSplit::new(3, 6, &[1, 2], 2).is_ok());
        assert!(HypersimplexSplit::new(3, 6, &[1, 2], 1).is_err());
        assert!(HypersimplexSplit::new(3, 6, &[1, 2, 3], 1).is_ok());
        assert!(HypersimplexSplit::new(3, 6, &[1, 2], 3).is_err());
    }

    #[test]
    fn tree_refinement_on_six_leaves() {
        for t in all_trivalent_topologies(&[1, 2, 3, 4, 5, 6]) {
            let splits = hypersimplex_splits_of_tree(&t).unwrap();
            let r = common_refinement(2, 6, &splits).unwrap();
            assert_eq!(r, cells_from_tree(&t).unwrap());
            assert_eq!(r.cells().len(), splits.len() + 1);
        }
    }

    #[test]
    fn empty_split_list_is_trivial() {
        let r = common_refinement(3, 6, &[]).unwrap();
        assert_eq!(r.cells().len(), 1);
        assert!(r.cells()[0].len() == 20 && !r.cells()[0].is_empty());
    }
}
