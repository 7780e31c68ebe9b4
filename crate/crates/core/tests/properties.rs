use std::collections::BTreeMap;

use dressian_core::arrangement::{
    arrangement_from_weight, is_abstract_arrangement, metrize_abstract_arrangement, weight_from_arrangement,
};
use dressian_core::pluecker::{cone_signature, is_in_dressian};
use dressian_core::rational::{frac, int, Rational};
use dressian_core::split::{common_refinement, hypersimplex_splits_of_tree};
use dressian_core::subdivision::{cells_from_tree, is_matroidal, regular_subdivision};
use dressian_core::tree::{reconstruct_tree, Caterpillar, Dissimilarity};
use dressian_core::{AbstractArrangement, KSubset, MetricTree, WeightVector};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![(Just(2u32), 4u32..=6), (Just(3u32), 5u32..=6)]
}

/// Small integer weights: ties are frequent enough that both sides of the
/// Dressian show up.
fn weight() -> impl Strategy<Value = WeightVector> {
    shape().prop_flat_map(|(k, n)| {
        let len = dressian_core::subset::binomial(n as u64, k as u64) as usize;
        prop::collection::vec(0i64..=2, len)
            .prop_map(move |v| WeightVector::new(k, n, v.into_iter().map(int).collect()).unwrap())
    })
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=5).prop_map(|(p, q)| frac(p, q))
}

/// Random trivalent tree on `[m]`: leaves are inserted in a random order,
/// each subdividing a chosen edge.
fn trivalent_tree(max_leaves: u32) -> impl Strategy<Value = MetricTree> {
    (4..=max_leaves).prop_flat_map(|m| {
        let edges = 2 * m as usize - 3;
        (
            Just((1..=m).collect::<Vec<u32>>()).prop_shuffle(),
            prop::collection::vec(any::<prop::sample::Index>(), m as usize - 3),
            prop::collection::vec(positive(), edges),
        )
            .prop_map(|(order, picks, lengths)| {
                let mut labels = vec![None, Some(order[0]), Some(order[1]), Some(order[2])];
                let mut edges = vec![(0, 1), (0, 2), (0, 3)];
                for (&l, pick) in order[3..].iter().zip(&picks) {
                    let e = pick.index(edges.len());
                    let (u, v) = edges[e];
                    let x = labels.len();
                    labels.push(None);
                    labels.push(Some(l));
                    edges[e] = (u, x);
                    edges.push((x, v));
                    edges.push((x, x + 1));
                }
                let edges = edges.into_iter().zip(lengths).map(|((u, v), len)| (u, v, len)).collect();
                MetricTree::new(labels, edges).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_and_signature_ignore_lineality_and_scale(
        w in weight(),
        a in prop::collection::vec(-5i64..=5, 6),
        c in positive(),
    ) {
        let a: Vec<Rational> = a[..w.n() as usize].iter().map(|&x| int(x)).collect();
        let shifted = w.lineality_shift(&a).unwrap();
        let scaled = w.scale(&c);
        prop_assert_eq!(is_in_dressian(&w), is_in_dressian(&shifted));
        prop_assert_eq!(is_in_dressian(&w), is_in_dressian(&scaled));
        if is_in_dressian(&w) {
            let s = cone_signature(&w).unwrap();
            prop_assert_eq!(&cone_signature(&shifted).unwrap(), &s);
            prop_assert_eq!(&cone_signature(&scaled).unwrap(), &s);
            prop_assert_eq!(regular_subdivision(&shifted), regular_subdivision(&w));
        }
    }

    #[test]
    fn dressian_iff_matroidal(w in weight()) {
        prop_assert_eq!(is_in_dressian(&w), is_matroidal(&regular_subdivision(&w)));
    }

    #[test]
    fn four_point_iff_dr2(m in 4u32..=6, vals in prop::collection::vec(1i64..=6, 15)) {
        let labels: Vec<u32> = (1..=m).collect();
        let mut it = vals.into_iter();
        let d = Dissimilarity::from_fn(&labels, |_, _| int(it.next().unwrap()));
        let w = WeightVector::from_fn(2, m, |s| {
            let e = s.to_vec();
            -d.get(e[0], e[1]).clone()
        }).unwrap();
        prop_assert_eq!(d.is_tree_metric(), is_in_dressian(&w));
    }

    #[test]
    fn tree_metrics_are_in_dr2(t in trivalent_tree(7)) {
        let d = t.tree_metric();
        let m = t.leaves().len() as u32;
        let w = WeightVector::from_fn(2, m, |s| {
            let e = s.to_vec();
            -d.get(e[0], e[1]).clone()
        }).unwrap();
        prop_assert!(is_in_dressian(&w));
        prop_assert_eq!(regular_subdivision(&w), cells_from_tree(&t).unwrap());
    }

    #[test]
    fn reconstruct_inverts_tree_metric(t in trivalent_tree(8)) {
        let back = reconstruct_tree(&t.tree_metric()).unwrap();
        prop_assert!(back.labelled_isomorphic(&t, true));
    }

    #[test]
    fn tree_cells_are_split_refinement(t in trivalent_tree(7)) {
        let m = t.leaves().len() as u32;
        let splits = hypersimplex_splits_of_tree(&t).unwrap();
        prop_assert_eq!(splits.len() as u32, m - 3);
        let cells = cells_from_tree(&t).unwrap();
        prop_assert_eq!(cells.cells().len() as u32, m - 2);
        prop_assert_eq!(common_refinement(2, m, &splits).unwrap(), cells);
    }
}

fn family(trees: &[&str]) -> AbstractArrangement {
    let map: BTreeMap<KSubset, MetricTree> = trees
        .iter()
        .enumerate()
        .map(|(i, s)| (KSubset::new(&[i as u32 + 1], 6).unwrap(), Caterpillar::parse(s).unwrap().to_tree().unwrap()))
        .collect();
    AbstractArrangement::new(3, 6, map).unwrap()
}

const CONE0: [&str; 6] = ["C(25,4,36)", "C(15,3,46)", "C(16,2,45)", "C(26,1,35)", "C(12,6,34)", "C(13,5,24)"];

#[test]
fn cone0_class_metrizes() {
    let a = family(&CONE0);
    let t = metrize_abstract_arrangement(&a).unwrap().unwrap();
    let w = weight_from_arrangement(&t).unwrap();
    assert!(arrangement_from_weight(&w).unwrap().to_abstract().equivalent(&a));
}

/// A Whitehead move on `T_1` alone leaves the other five trees in place, and
/// no choice of lengths makes the result compatible.
#[test]
fn inconsistent_family_is_infeasible() {
    let mut trees = CONE0;
    trees[0] = "C(24,5,36)";
    let a = family(&trees);
    assert!(!is_abstract_arrangement(&a).unwrap());
    assert_eq!(metrize_abstract_arrangement(&a).unwrap(), None);
}
