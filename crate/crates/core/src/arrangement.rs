//! Metric tree arrangements: one tree `T_J` on `[n] \ J` for every
//! `(k-2)`-subset `J`, and their relation to weights in the Dressian.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{Cmp, LinearProgram, Outcome, Sense};
use crate::pluecker::dressian_violation;
use crate::rational::{self, Rational};
use crate::subdivision::contraction_restriction;
use crate::subset::{self, KSubset};
use crate::tree::{all_topologies, reconstruct_tree, Dissimilarity, MetricTree};
use crate::weight::WeightVector;

/// Trees indexed by `(k-2)`-subsets of `[n]`; `T_J` has leaves `[n] \ J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeArrangement {
    k: u32,
    n: u32,
    trees: BTreeMap<KSubset, MetricTree>,
}

/// An arrangement whose edge lengths carry no meaning; only topologies are
/// compared.
#[derive(Debug, Clone)]
pub struct AbstractArrangement {
    inner: TreeArrangement,
}

fn complement(j: &KSubset, n: u32) -> Vec<u32> {
    (1..=n).filter(|&x| !j.contains(x)).collect()
}

impl TreeArrangement {
    pub fn new(k: u32, n: u32, trees: BTreeMap<KSubset, MetricTree>) -> Result<Self> {
        if k < 2 || n < k + 1 {
            return Err(Error::param(alloc::format!(
                "arrangements need k >= 2 and n >= k + 1, got k = {k}, n = {n}"
            )));
        }
        let ground: Vec<u32> = (1..=n).collect();
        let indices = subset::subsets_of(&ground, k as usize - 2, n);
        if trees.len() != indices.len() {
            return Err(Error::param(alloc::format!(
                "expected {} trees, got {}",
                indices.len(),
                trees.len()
            )));
        }
        for j in &indices {
            let t = trees
                .get(j)
                .ok_or_else(|| Error::param(alloc::format!("missing tree for index {j}")))?;
            if t.leaves() != complement(j, n) {
                return Err(Error::param(alloc::format!("tree {j} has the wrong leaf set")));
            }
        }
        Ok(TreeArrangement { k, n, trees })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn trees(&self) -> &BTreeMap<KSubset, MetricTree> {
        &self.trees
    }

    pub fn tree(&self, j: &KSubset) -> Option<&MetricTree> {
        self.trees.get(j)
    }

    /// `δ_J(i, j)`.
    pub fn distance(&self, index: &KSubset, i: u32, j: u32) -> Rational {
        self.trees[index].tree_metric().get(i, j).clone()
    }

    pub fn to_abstract(&self) -> AbstractArrangement {
        AbstractArrangement { inner: self.clone() }
    }

    /// The `k`-subsets `I` such that `ij` is a cherry of `T_{I \ ij}` for
    /// every pair `ij` in `I`.
    pub fn cherries(&self) -> Vec<KSubset> {
        let ground: Vec<u32> = (1..=self.n).collect();
        subset::subsets_of(&ground, self.k as usize, self.n)
            .into_iter()
            .filter(|s| {
                let e = s.to_vec();
                (0..e.len()).all(|a| {
                    (a + 1..e.len()).all(|b| {
                        let j = s.without(e[a]).without(e[b]);
                        self.trees[&j].has_cherry(e[a], e[b])
                    })
                })
            })
            .collect()
    }

    /// Partitions `K = J ∪ {i, j}` of a `k`-subset.
    fn partitions(&self, big: &KSubset) -> Vec<(KSubset, u32, u32)> {
        let e = big.to_vec();
        let mut out = Vec::new();
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                out.push((big.without(e[a]).without(e[b]), e[a], e[b]));
            }
        }
        out
    }
}

impl AbstractArrangement {
    pub fn new(k: u32, n: u32, trees: BTreeMap<KSubset, MetricTree>) -> Result<Self> {
        let trees = trees.into_iter().map(|(j, t)| (j, t.with_unit_lengths())).collect();
        Ok(AbstractArrangement {
            inner: TreeArrangement::new(k, n, trees)?,
        })
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    pub fn trees(&self) -> &BTreeMap<KSubset, MetricTree> {
        &self.inner.trees
    }

    pub fn cherries(&self) -> Vec<KSubset> {
        self.inner.cherries()
    }

    /// Same index structure and labelled-isomorphic topologies throughout.
    pub fn equivalent(&self, other: &AbstractArrangement) -> bool {
        self.k() == other.k()
            && self.n() == other.n()
            && self
                .trees()
                .iter()
                .all(|(j, t)| other.trees().get(j).is_some_and(|u| t.same_topology(u)))
    }
}

impl PartialEq for AbstractArrangement {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

/// Affine map `x -> 5/4 + α (x - lo)` sending `-w` into `[5/4, 7/4]`.
/// Pairwise values in that range satisfy the triangle inequality strictly.
struct MetricScale {
    lo: Rational,
    alpha: Rational,
}

impl MetricScale {
    fn for_weight(w: &WeightVector) -> Self {
        let (lo, hi) = rational::min_max(w.values().iter()).expect("nonempty weight");
        let (lo, hi) = (-hi, -lo);
        let alpha = if hi == lo {
            Rational::zero()
        } else {
            rational::frac(1, 2) / (hi - &lo)
        };
        MetricScale { lo, alpha }
    }

    fn apply(&self, wv: &Rational) -> Rational {
        rational::frac(5, 4) + &self.alpha * (-wv - &self.lo)
    }
}

fn tree_from_pairs(leaves: &[u32], scale: &MetricScale, value: impl Fn(u32, u32) -> Rational) -> Result<MetricTree> {
    let d = Dissimilarity::from_fn(leaves, |i, j| scale.apply(&value(i, j)));
    reconstruct_tree(&d).map_err(|e| Error::Internal(alloc::format!("restriction is not a tree metric: {e}")))
}

/// `T_J` is the tree of the metric `(i, j) -> f(w(J ∪ ij))` where `f` is one
/// decreasing affine map shared by all `J`, so the arrangement is compatible.
pub fn arrangement_from_weight(w: &WeightVector) -> Result<TreeArrangement> {
    if let Some(relation) = dressian_violation(w) {
        return Err(Error::NotInDressian { relation });
    }
    let (k, n) = (w.k(), w.n());
    if k < 2 {
        return Err(Error::param("arrangements need k >= 2"));
    }
    let scale = MetricScale::for_weight(w);
    let ground: Vec<u32> = (1..=n).collect();
    let mut trees = BTreeMap::new();
    for j in subset::subsets_of(&ground, k as usize - 2, n) {
        let leaves = complement(&j, n);
        let t = tree_from_pairs(&leaves, &scale, |a, b| w.get(&j.with(a).with(b)).clone())?;
        trees.insert(j, t);
    }
    TreeArrangement::new(k, n, trees)
}

/// Checks `δ_J(i, j) = δ_J'(i', j')` whenever `J ∪ ij = J' ∪ i'j'`.
pub fn check_compatibility(t: &TreeArrangement) -> Result<()> {
    let metrics: BTreeMap<KSubset, Dissimilarity> =
        t.trees.iter().map(|(j, tr)| (*j, tr.tree_metric())).collect();
    for big in subset::enumerate_ksubsets(t.k, t.n)? {
        let parts = t.partitions(&big);
        let (j0, a0, b0) = parts[0];
        let first = metrics[&j0].get(a0, b0);
        for &(j, a, b) in &parts[1..] {
            if metrics[&j].get(a, b) != first {
                return Err(Error::Incompatible {
                    basis: big,
                    first_index: j0.to_vec(),
                    first_pair: (a0, b0),
                    second_index: j.to_vec(),
                    second_pair: (a, b),
                });
            }
        }
    }
    Ok(())
}

/// `w(J ∪ ij) = -δ_J(i, j)`. The sign puts the result in the
/// min-convention Dressian.
pub fn weight_from_arrangement(t: &TreeArrangement) -> Result<WeightVector> {
    check_compatibility(t)?;
    let metrics: BTreeMap<KSubset, Dissimilarity> =
        t.trees.iter().map(|(j, tr)| (*j, tr.tree_metric())).collect();
    WeightVector::from_fn(t.k, t.n, |big| {
        let e = big.to_vec();
        let j = big.without(e[0]).without(e[1]);
        -metrics[&j].get(e[0], e[1]).clone()
    })
}

/// The recursive definition of an abstract arrangement of `n` trees (`k = 3`).
pub fn is_abstract_arrangement(a: &AbstractArrangement) -> Result<bool> {
    if a.k() != 3 {
        return Err(Error::param("abstract arrangement check is defined for k = 3"));
    }
    if a.n() < 4 {
        return Err(Error::param("abstract arrangements need n >= 4"));
    }
    let trees: BTreeMap<u32, MetricTree> = a
        .trees()
        .iter()
        .map(|(j, t)| (j.to_vec()[0], t.clone()))
        .collect();
    let labels: Vec<u32> = (1..=a.n()).collect();
    abstract_rec(&labels, &trees)
}

fn abstract_rec(labels: &[u32], trees: &BTreeMap<u32, MetricTree>) -> Result<bool> {
    match labels.len() {
        4 => Ok(true),
        5 => Ok(all_topologies(labels).iter().any(|cand| {
            labels.iter().all(|&i| {
                cand.delete_leaf(i)
                    .map(|t| t.same_topology(&trees[&i]))
                    .unwrap_or(false)
            })
        })),
        _ => {
            for &i in labels {
                let rest: Vec<u32> = labels.iter().copied().filter(|&x| x != i).collect();
                let mut sub = BTreeMap::new();
                for &j in &rest {
                    sub.insert(j, trees[&j].delete_leaf(i)?);
                }
                if !abstract_rec(&rest, &sub)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Lengths for the given topologies satisfying every compatibility equation,
/// with internal edges at least 1 and pendant edges at least 0. Among the
/// feasible points, the one minimizing total length (ties broken by the
/// lengths in tree and edge order) is returned. `None` if infeasible.
pub fn metrize_abstract_arrangement(a: &AbstractArrangement) -> Result<Option<TreeArrangement>> {
    let arr = &a.inner;
    let mut offset: BTreeMap<KSubset, usize> = BTreeMap::new();
    let mut nvars = 0;
    for (j, t) in &arr.trees {
        offset.insert(*j, nvars);
        nvars += t.edges().len();
    }
    let mut lp = LinearProgram::new(nvars, Sense::Minimize);
    for (j, t) in &arr.trees {
        for e in 0..t.edges().len() {
            let v = offset[j] + e;
            lp.set_nonnegative(v);
            if t.is_internal_edge(e) {
                lp.bound(v, Cmp::Ge, Rational::one());
            }
        }
    }
    let path_row = |j: &KSubset, x: u32, y: u32| -> Vec<Rational> {
        let mut row = vec![Rational::zero(); nvars];
        for e in arr.trees[j].path_edges(x, y).expect("leaves of T_J") {
            row[offset[j] + e] += Rational::one();
        }
        row
    };
    for big in subset::enumerate_ksubsets(arr.k, arr.n)? {
        let parts = arr.partitions(&big);
        let (j0, a0, b0) = parts[0];
        let base = path_row(&j0, a0, b0);
        for &(j, x, y) in &parts[1..] {
            let row: Vec<Rational> = path_row(&j, x, y).iter().zip(&base).map(|(p, q)| p - q).collect();
            lp.add(row, Cmp::Eq, Rational::zero());
        }
    }
    lp.objective(vec![Rational::one(); nvars]);
    for v in 0..nvars {
        let mut c = vec![Rational::zero(); nvars];
        c[v] = Rational::one();
        lp.objective(c);
    }
    let x = match lp.solve() {
        Outcome::Optimal { x, .. } => x,
        Outcome::Infeasible => return Ok(None),
        Outcome::Unbounded => return Err(Error::Internal("metrization LP is unbounded".into())),
    };
    let mut trees = BTreeMap::new();
    for (j, t) in &arr.trees {
        let o = offset[j];
        trees.insert(*j, t.with_edge_lengths(&x[o..o + t.edges().len()])?);
    }
    Ok(Some(TreeArrangement::new(arr.k, arr.n, trees)?))
}

/// Trees obtained by contracting `i_1, ..., i_{k-2}` in order and reading
/// the tree of the resulting `Δ(2, n-k+2)` weight. Lengths use the same
/// normalization as [`arrangement_from_weight`].
pub fn recursive_contraction_arrangement(w: &WeightVector) -> Result<Vec<(Vec<u32>, MetricTree)>> {
    if let Some(relation) = dressian_violation(w) {
        return Err(Error::NotInDressian { relation });
    }
    let (k, n) = (w.k(), w.n());
    if k < 2 {
        return Err(Error::param("arrangements need k >= 2"));
    }
    let scale = MetricScale::for_weight(w);
    let mut out = Vec::new();
    let mut tuple = Vec::new();
    contract_rec(w, &(1..=n).collect::<Vec<_>>(), k - 2, &mut tuple, &scale, &mut out)?;
    Ok(out)
}

fn contract_rec(
    w: &WeightVector,
    labels: &[u32],
    left: u32,
    tuple: &mut Vec<u32>,
    scale: &MetricScale,
    out: &mut Vec<(Vec<u32>, MetricTree)>,
) -> Result<()> {
    if left == 0 {
        let t = tree_from_pairs(labels, scale, |a, b| {
            let pa = labels.iter().position(|&x| x == a).expect("label") as u32 + 1;
            let pb = labels.iter().position(|&x| x == b).expect("label") as u32 + 1;
            w.get(&KSubset::new(&[pa, pb], w.n()).expect("positions")).clone()
        })?;
        out.push((tuple.clone(), t));
        return Ok(());
    }
    for (pos, &label) in labels.iter().enumerate() {
        let c = contraction_restriction(w, pos as u32 + 1)?;
        let rest: Vec<u32> = labels.iter().copied().filter(|&x| x != label).collect();
        tuple.push(label);
        contract_rec(&c, &rest, left - 1, tuple, scale, out)?;
        tuple.pop();
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WhiteheadDiff {
    Identical,
    /// Indices whose trees differ; each pair is related by a Whitehead move.
    GeneralizedWhitehead(Vec<KSubset>),
    Farther,
}

pub fn generalized_whitehead_diff(a: &TreeArrangement, b: &TreeArrangement) -> Result<WhiteheadDiff> {
    if (a.k, a.n) != (b.k, b.n) {
        return Err(Error::param("arrangements have different index structures"));
    }
    let mut differ = Vec::new();
    for (j, ta) in &a.trees {
        let tb = &b.trees[j];
        if !ta.same_topology(tb) {
            if !ta.is_whitehead_related(tb)? {
                return Ok(WhiteheadDiff::Farther);
            }
            differ.push(*j);
        }
    }
    Ok(if differ.is_empty() {
        WhiteheadDiff::Identical
    } else {
        WhiteheadDiff::GeneralizedWhitehead(differ)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluecker::{cone_signature, is_in_dressian};
    use crate::rational::{frac, int};
    use crate::subdivision::{cells_from_tree, regular_subdivision};
    use crate::tree::Caterpillar;

    fn idx(e: &[u32], n: u32) -> KSubset {
        KSubset::new(e, n).unwrap()
    }

    fn k3(n: u32, trees: &[&str]) -> AbstractArrangement {
        let map = trees
            .iter()
            .enumerate()
            .map(|(i, s)| (idx(&[i as u32 + 1], n), Caterpillar::parse(s).unwrap().to_tree().unwrap()))
            .collect();
        AbstractArrangement::new(3, n, map).unwrap()
    }

    fn cone0() -> AbstractArrangement {
        k3(6, &["C(25,4,36)", "C(15,3,46)", "C(16,2,45)", "C(26,1,35)", "C(12,6,34)", "C(13,5,24)"])
    }

    fn stars(n: u32, len: Rational) -> TreeArrangement {
        let map = (1..=n)
            .map(|i| {
                let leaves: Vec<u32> = (1..=n).filter(|&x| x != i).collect();
                (idx(&[i], n), MetricTree::star(&leaves, len.clone()).unwrap())
            })
            .collect();
        TreeArrangement::new(3, n, map).unwrap()
    }

    #[test]
    fn star_arrangement_weight() {
        let w = weight_from_arrangement(&stars(5, frac(1, 2))).unwrap();
        assert!(w.values().iter().all(|v| *v == int(-1)));
        assert!(is_in_dressian(&w));
        assert!(stars(5, frac(1, 2)).cherries().is_empty());
    }

    #[test]
    fn mismatched_stars_are_incompatible() {
        let mut t = stars(4, frac(1, 2));
        t.trees.insert(idx(&[1], 4), MetricTree::star(&[2, 3, 4], int(1)).unwrap());
        match check_compatibility(&t) {
            Err(Error::Incompatible { basis, .. }) => assert_eq!(basis, idx(&[1, 2, 3], 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cone0_cherries_and_metrization() {
        let a = cone0();
        let cherries: Vec<alloc::string::String> = a.cherries().iter().map(|c| alloc::format!("{c}")).collect();
        assert_eq!(cherries, ["125", "136", "246", "345"]);
        assert!(is_abstract_arrangement(&a).unwrap());
        let m = metrize_abstract_arrangement(&a).unwrap().expect("feasible");
        check_compatibility(&m).unwrap();
        let w = weight_from_arrangement(&m).unwrap();
        assert!(is_in_dressian(&w));
        let back = arrangement_from_weight(&w).unwrap();
        assert!(back.to_abstract().equivalent(&a));
        assert_eq!(cone_signature(&weight_from_arrangement(&back).unwrap()), cone_signature(&w));
    }

    #[test]
    fn k3_contraction_trees_match() {
        let m = metrize_abstract_arrangement(&cone0()).unwrap().unwrap();
        let w = weight_from_arrangement(&m).unwrap();
        let arr = arrangement_from_weight(&w).unwrap();
        let rec = recursive_contraction_arrangement(&w).unwrap();
        assert_eq!(rec.len(), 6);
        let sub = regular_subdivision(&w);
        for (tuple, t) in &rec {
            let j = idx(tuple, 6);
            assert!(t.labelled_isomorphic(&arr.trees()[&j], true));
            // the tree is dual to the subdivision induced on the contraction facet
            let leaves = t.leaves();
            let relabel: Vec<u32> = (1..=6).map(|x| leaves.iter().position(|&l| l == x).map_or(0, |p| p as u32 + 1)).collect();
            let local = t.relabel(&relabel);
            assert_eq!(cells_from_tree(&local).unwrap(), sub.restrict_to_contraction(tuple[0]));
        }
    }

    #[test]
    fn abstract_check_rejects_inconsistent_family() {
        // T_6 disagrees with the 5-leaf restrictions of the others
        let a = k3(6, &["C(25,4,36)", "C(15,3,46)", "C(16,2,45)", "C(26,1,35)", "C(12,6,34)", "C(12,5,34)"]);
        assert!(!is_abstract_arrangement(&a).unwrap());
    }

    #[test]
    fn four_stars_form_an_arrangement() {
        assert!(is_abstract_arrangement(&stars(4, int(1)).to_abstract()).unwrap());
        assert!(AbstractArrangement::new(3, 3, BTreeMap::new()).is_err());
    }

    #[test]
    fn whitehead_diff_classes() {
        let m = metrize_abstract_arrangement(&cone0()).unwrap().unwrap();
        assert_eq!(generalized_whitehead_diff(&m, &m).unwrap(), WhiteheadDiff::Identical);
    }
}
