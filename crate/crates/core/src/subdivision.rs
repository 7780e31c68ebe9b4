//! Regular subdivisions of the hypersimplex `Δ(k, n)` and matroid checks.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};
use crate::subset::{self, KSubset};
use crate::tree::MetricTree;
use crate::weight::WeightVector;

/// A cell of a subdivision, given by the hypersimplex vertices it contains.
/// Bases are kept sorted in lex order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    bases: Vec<KSubset>,
}

impl Cell {
    pub fn new(bases: impl IntoIterator<Item = KSubset>) -> Result<Self> {
        let set: BTreeSet<KSubset> = bases.into_iter().collect();
        let bases: Vec<KSubset> = set.into_iter().collect();
        let Some(first) = bases.first() else {
            return Err(Error::param("a cell needs at least one basis"));
        };
        let k = first.k();
        if bases.iter().any(|b| b.k() != k) {
            return Err(Error::param("bases of a cell must have equal size"));
        }
        Ok(Cell { bases })
    }

    pub fn bases(&self) -> &[KSubset] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn contains(&self, b: &KSubset) -> bool {
        self.bases.binary_search(b).is_ok()
    }

    pub fn is_subset(&self, other: &Cell) -> bool {
        self.bases.iter().all(|b| other.contains(b))
    }

    /// Dimension of the convex hull of the incidence vectors.
    pub fn dimension(&self) -> usize {
        let n = self.bases.iter().map(|b| b.n()).max().unwrap_or(0) as usize;
        let rows: Vec<Vec<Rational>> = self
            .bases
            .iter()
            .map(|b| b.incidence().into_iter().map(|x| rational::int(x as i64)).collect())
            .collect();
        // all vertices lie on x_1 + ... + x_n = k, so the linear rank is one
        // more than the affine dimension
        linalg::rank(&rows, n) - 1
    }

    /// The face on `x_i = 1`, as a cell of `Δ(k-1, n-1)`.
    pub fn contract(&self, i: u32) -> Option<Cell> {
        let bases: Vec<KSubset> = self
            .bases
            .iter()
            .filter(|b| b.contains(i))
            .map(|b| drop_label(&b.without(i), i))
            .collect();
        Cell::new(bases).ok()
    }

    /// The face on `x_i = 0`, as a cell of `Δ(k, n-1)`.
    pub fn delete(&self, i: u32) -> Option<Cell> {
        let bases: Vec<KSubset> = self
            .bases
            .iter()
            .filter(|b| !b.contains(i))
            .map(|b| drop_label(b, i))
            .collect();
        Cell::new(bases).ok()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, b) in self.bases.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

/// Removes label `i` from the ground set: labels above `i` move down by one.
pub fn drop_label(s: &KSubset, i: u32) -> KSubset {
    let low = s.bits() & ((1u64 << (i - 1)) - 1);
    let high = (s.bits() >> i) << (i - 1);
    KSubset::from_bits(low | high, s.n() - 1)
}

/// Inverse of [`drop_label`].
pub fn insert_label(s: &KSubset, i: u32) -> KSubset {
    let low = s.bits() & ((1u64 << (i - 1)) - 1);
    let high = (s.bits() >> (i - 1)) << i;
    KSubset::from_bits(low | high, s.n() + 1)
}

/// Maximal cells of a subdivision of `Δ(k, n)`, sorted.
#[derive(Debug, Clone)]
pub struct MatroidalSubdivision {
    k: u32,
    n: u32,
    cells: Vec<Cell>,
    weight: Option<WeightVector>,
}

impl PartialEq for MatroidalSubdivision {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.cells == other.cells
    }
}

impl Eq for MatroidalSubdivision {}

impl MatroidalSubdivision {
    pub fn new(k: u32, n: u32, cells: impl IntoIterator<Item = Cell>) -> Self {
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        MatroidalSubdivision {
            k,
            n,
            cells: set.into_iter().collect(),
            weight: None,
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn weight(&self) -> Option<&WeightVector> {
        self.weight.as_ref()
    }

    /// Whether every vertex of `Δ(k, n)` lies in some cell.
    pub fn covers_all_vertices(&self) -> bool {
        let Ok(all) = subset::enumerate_ksubsets(self.k, self.n) else {
            return false;
        };
        all.iter().all(|s| self.cells.iter().any(|c| c.contains(s)))
    }

    /// Induced subdivision on the facet `x_i = 1`.
    pub fn restrict_to_contraction(&self, i: u32) -> MatroidalSubdivision {
        let faces = self.cells.iter().filter_map(|c| c.contract(i));
        MatroidalSubdivision::new(self.k - 1, self.n - 1, maximal(faces))
    }

    /// Induced subdivision on the facet `x_i = 0`.
    pub fn restrict_to_deletion(&self, i: u32) -> MatroidalSubdivision {
        let faces = self.cells.iter().filter_map(|c| c.delete(i));
        MatroidalSubdivision::new(self.k, self.n - 1, maximal(faces))
    }
}

fn maximal(cells: impl Iterator<Item = Cell>) -> Vec<Cell> {
    let all: BTreeSet<Cell> = cells.collect();
    all.iter()
        .filter(|c| !all.iter().any(|d| d != *c && c.is_subset(d)))
        .cloned()
        .collect()
}

/// Maximal cells of the regular subdivision induced by lifting `e_S` to
/// height `w(S)` and projecting the lower faces.
pub fn regular_subdivision(w: &WeightVector) -> MatroidalSubdivision {
    let (k, n) = (w.k(), w.n());
    let subsets = w.subsets();
    if k == n {
        let mut s = MatroidalSubdivision::new(k, n, Cell::new(subsets).ok());
        s.weight = Some(w.clone());
        return s;
    }
    // Vertices of {c : c·e_S <= w(S)} are the lifting functionals of the
    // maximal lower faces. Homogenize with t and run double description on
    // rows w(S)·t - c·e_S >= 0 and t >= 0.
    let den = rational::common_denominator(w.values());
    let dim = n as usize + 1;
    let mut rows: Vec<Vec<BigInt>> = subsets
        .iter()
        .zip(w.values())
        .map(|(s, v)| {
            let mut row: Vec<BigInt> = (1..=n)
                .map(|i| if s.contains(i) { BigInt::from(-1) } else { BigInt::zero() })
                .collect();
            let scaled = v * Rational::from_integer(den.clone());
            row.push(scaled.to_integer());
            row
        })
        .collect();
    let mut t_row = alloc::vec![BigInt::zero(); dim];
    t_row[n as usize] = BigInt::from(1);
    rows.push(t_row);

    let rays = dd::extreme_rays(&rows, dim).expect("hypersimplex cone is pointed");
    let cells = rays
        .iter()
        .filter(|r| r[n as usize].is_positive())
        .map(|r| {
            let tight = subsets
                .iter()
                .zip(&rows)
                .filter(|(_, row)| row.iter().zip(r.iter()).fold(BigInt::zero(), |a, (x, y)| a + x * y).is_zero())
                .map(|(s, _)| *s);
            Cell::new(tight).expect("a vertex of the dual polyhedron has tight rows")
        });
    let mut s = MatroidalSubdivision::new(k, n, cells);
    s.weight = Some(w.clone());
    s
}

/// Basis exchange: for all `B1, B2` and `x ∈ B1 \ B2` some `y ∈ B2 \ B1`
/// has `B1 - x + y` in the cell.
pub fn is_matroid_cell(c: &Cell) -> bool {
    let set: BTreeSet<KSubset> = c.bases().iter().copied().collect();
    for b1 in c.bases() {
        for b2 in c.bases() {
            for x in b1.elements().filter(|&x| !b2.contains(x)) {
                let ok = b2
                    .elements()
                    .filter(|&y| !b1.contains(y))
                    .any(|y| set.contains(&b1.without(x).with(y)));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_matroidal(s: &MatroidalSubdivision) -> bool {
    s.cells().iter().all(is_matroid_cell)
}

/// One cell per internal vertex `v`: the pairs `ij` whose path passes
/// through `v`. The ground set is `[max leaf label]`.
pub fn cells_from_tree(t: &MetricTree) -> Result<MatroidalSubdivision> {
    let internal = t.internal_vertices();
    if internal.is_empty() {
        return Err(Error::param("tree has no internal vertex"));
    }
    let leaves = t.leaves();
    let n = leaves.iter().copied().max().unwrap_or(0);
    let pairs = subset::subsets_of(&leaves, 2, n);
    let cells = internal.iter().map(|&v| {
        let bases = pairs.iter().filter(|p| {
            let e = p.to_vec();
            t.path_through(e[0], e[1], v)
        });
        Cell::new(bases.copied()).expect("every internal vertex lies on a leaf path")
    });
    Ok(MatroidalSubdivision::new(2, n, cells))
}

/// `w'(S) = w(S ∪ {i})` on `(k-1)`-subsets of `[n] \ {i}`, relabelled to `[n-1]`.
pub fn contraction_restriction(w: &WeightVector, i: u32) -> Result<WeightVector> {
    let (k, n) = (w.k(), w.n());
    if i == 0 || i > n {
        return Err(Error::param(alloc::format!("label {i} outside [1, {n}]")));
    }
    if k < 2 {
        return Err(Error::param("contraction needs k >= 2"));
    }
    WeightVector::from_fn(k - 1, n - 1, |s| w.get(&insert_label(s, i).with(i)).clone())
}

/// `w'(S) = w(S)` on `k`-subsets avoiding `i`, relabelled to `[n-1]`.
pub fn deletion_restriction(w: &WeightVector, i: u32) -> Result<WeightVector> {
    let (k, n) = (w.k(), w.n());
    if i == 0 || i > n {
        return Err(Error::param(alloc::format!("label {i} outside [1, {n}]")));
    }
    if k >= n {
        return Err(Error::param("deletion needs k < n"));
    }
    WeightVector::from_fn(k, n - 1, |s| w.get(&insert_label(s, i)).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluecker::is_in_dressian;
    use crate::rational::int;
    use crate::tree::Caterpillar;
    use alloc::vec;
    use alloc::vec::Vec;

    fn cell(n: u32, sets: &[&[u32]]) -> Cell {
        Cell::new(sets.iter().map(|s| KSubset::new(s, n).unwrap())).unwrap()
    }

    fn dr25_weight() -> WeightVector {
        WeightVector::from_fn(2, 5, |s| {
            let v = s.to_vec();
            if v == [1, 2] || v == [4, 5] {
                int(1)
            } else {
                int(0)
            }
        })
        .unwrap()
    }

    fn dr25_cells() -> Vec<Cell> {
        vec![
            cell(5, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5], &[2, 3], &[2, 4], &[2, 5]]),
            cell(5, &[&[1, 3], &[1, 4], &[1, 5], &[2, 3], &[2, 4], &[2, 5], &[3, 4], &[3, 5]]),
            cell(5, &[&[1, 4], &[1, 5], &[2, 4], &[2, 5], &[3, 4], &[3, 5], &[4, 5]]),
        ]
    }

    #[test]
    fn zero_weight_gives_trivial_subdivision() {
        let s = regular_subdivision(&WeightVector::zero(3, 6).unwrap());
        assert_eq!(s.cells().len(), 1);
        assert_eq!(s.cells()[0].len(), 20);
        assert!(is_matroidal(&s));
    }

    #[test]
    fn dr25_example() {
        let s = regular_subdivision(&dr25_weight());
        assert_eq!(s, MatroidalSubdivision::new(2, 5, dr25_cells()));
        assert!(is_matroidal(&s));
        assert!(s.covers_all_vertices());
        for c in s.cells() {
            assert_eq!(c.dimension(), 4);
        }
    }

    #[test]
    fn exchange_failure() {
        assert!(!is_matroid_cell(&cell(4, &[&[1, 2], &[3, 4]])));
        let all = Cell::new(subset::enumerate_ksubsets(2, 4).unwrap()).unwrap();
        assert!(is_matroid_cell(&all));
    }

    #[test]
    fn tree_cells() {
        let t = Caterpillar::new((1, 2), &[3], (4, 5)).to_tree().unwrap();
        let s = cells_from_tree(&t).unwrap();
        assert_eq!(s, MatroidalSubdivision::new(2, 5, dr25_cells()));
        let mut sizes: Vec<usize> = s.cells().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, [7, 7, 8]);
        let star = MetricTree::star(&[1, 2, 3, 4], int(1)).unwrap();
        assert_eq!(cells_from_tree(&star).unwrap().cells()[0].len(), 6);
    }

    #[test]
    fn label_shifts() {
        let s = KSubset::new(&[1, 3, 5], 6).unwrap();
        let d = drop_label(&s, 3);
        assert_eq!(d.to_vec(), [1, 4]);
        assert_eq!(d.n(), 5);
        assert_eq!(insert_label(&d, 3).with(3), s);
    }

    #[test]
    fn restrictions_match_induced_subdivisions() {
        // a generic point of Dr(3,6) built from a sum of split-like terms
        let w = WeightVector::from_fn(3, 6, |s| {
            let v = s.to_vec();
            let mut x = 0;
            if s.contains(1) && s.contains(2) {
                x += 2;
            }
            if s.contains(5) && s.contains(6) {
                x += 1;
            }
            if v == [3, 4, 5] {
                x += 1;
            }
            int(x)
        })
        .unwrap();
        let sub = regular_subdivision(&w);
        assert_eq!(is_matroidal(&sub), is_in_dressian(&w));
        for i in 1..=6 {
            let c = contraction_restriction(&w, i).unwrap();
            assert_eq!(sub.restrict_to_contraction(i), regular_subdivision(&c));
            let d = deletion_restriction(&w, i).unwrap();
            assert_eq!(sub.restrict_to_deletion(i), regular_subdivision(&d));
        }
        assert!(contraction_restriction(&w, 7).is_err());
        assert!(contraction_restriction(&dr25_weight(), 0).is_err());
    }

    #[test]
    fn restriction_of_zero_is_zero() {
        let w = WeightVector::zero(3, 6).unwrap();
        let c = contraction_restriction(&w, 2).unwrap();
        assert_eq!(c, WeightVector::zero(2, 5).unwrap());
    }
}
