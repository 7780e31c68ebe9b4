//! The acceptance checks, one function per criterion.
//!
//! Every check is exact. Time limits are wall-clock bounds on the check
//! itself; criteria 4 to 7 and 9 share the metrized Dr(3,6) fixtures and the
//! adjacency computation through a cache, so whichever runs first pays.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use dressian_core::arrangement::{
    arrangement_from_weight, generalized_whitehead_diff, is_abstract_arrangement, metrize_abstract_arrangement,
    recursive_contraction_arrangement, weight_from_arrangement,
};
use dressian_core::cone::{adjacent_cones, check_maximal, Adjacency};
use dressian_core::pluecker::{cone_signature, enumerate_relations, is_in_dressian};
use dressian_core::rational::{frac, int, Rational};
use dressian_core::split::{common_refinement, hypersimplex_splits_of_tree, HypersimplexSplit};
use dressian_core::subdivision::{
    cells_from_tree, contraction_restriction, is_matroid_cell, is_matroidal, regular_subdivision, Cell,
};
use dressian_core::subset::{enumerate_ksubsets, KSubset};
use dressian_core::tree::{all_trivalent_topologies, reconstruct_tree, Caterpillar, Dissimilarity};
use dressian_core::{MetricTree, TreeArrangement, WeightVector, WhiteheadDiff};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fixtures::{self, digits};
use crate::format::{Ordering, WeightDoc};

/// Criteria that cannot pass with a correct implementation, with the reason.
pub const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(
    2,
    "the fixture cell list of the Δ(4,8) example is not the regular subdivision of the fixture weight: \
     the exact computation gives cell sizes {17, 25, 30, 30, 62} in every entry ordering",
)];

/// Dimension of a maximal cone of the Plücker fan of Dr(3,6) in R^20,
/// lineality included. Derived by the cone computations; every class must
/// reproduce it.
pub const DR36_MAXIMAL_DIMENSION: usize = 10;

/// Random instances per property in criterion 8.
pub const PROPERTY_INSTANCES: usize = 200;

/// Seed of the property generators in criterion 8.
pub const PROPERTY_SEED: u64 = 0x00d2_e551_a000;

pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    pub run: fn() -> Result<Outcome>,
}

pub struct Report {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub within_limit: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.passed && self.within_limit
    }

    pub fn line(&self) -> String {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        let slow = if self.within_limit { "" } else { " over time limit" };
        format!(
            "{verdict} {} {} ({:.2}s / {}s{slow}): {}",
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, run| Criterion {
        id,
        name,
        limit: Duration::from_secs(secs),
        run,
    };
    vec![
        c(1, "dr25-example", 1, dr25_example),
        c(2, "delta48-example", 60, delta48_example),
        c(3, "class-cherries", 1, class_cherries),
        c(4, "metrization-membership", 60, metrization_membership),
        c(5, "round-trip", 60, round_trip),
        c(6, "adjacency", 600, adjacency),
        c(7, "wall-arrangements", 600, wall_arrangements),
        c(8, "oracle-equivalences", 600, oracle_equivalences),
        c(9, "generalized-consistency", 120, generalized_consistency),
    ]
}

pub fn run(c: &Criterion) -> Report {
    let start = Instant::now();
    let out = (c.run)().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
    let elapsed = start.elapsed();
    Report {
        id: c.id,
        name: c.name,
        passed: out.passed,
        within_limit: elapsed <= c.limit,
        elapsed,
        limit: c.limit,
        detail: out.detail,
    }
}

pub fn run_all() -> Vec<Report> {
    criteria().iter().map(run).collect()
}

fn sizes(cells: &[Cell]) -> Vec<usize> {
    let mut v: Vec<usize> = cells.iter().map(Cell::len).collect();
    v.sort_unstable();
    v
}

fn dr25_example() -> Result<Outcome> {
    let f = fixtures::dr25();
    let t = Caterpillar::parse(&f.tree)?.to_tree()?;
    let mut splits: Vec<String> = t
        .splits()
        .iter()
        .filter(|s| !s.is_trivial())
        .map(|s| s.to_string())
        .collect();
    splits.sort();
    let mut want = f.splits.clone();
    want.sort();
    let expected = dressian_core::MatroidalSubdivision::new(
        f.k,
        f.n,
        f.cells
            .iter()
            .map(|c| Cell::new(c.iter().map(|b| digits(b, f.n)).collect::<Result<Vec<_>>>()?).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?,
    );
    let refined = common_refinement(f.k, f.n, &hypersimplex_splits_of_tree(&t)?)?;
    let from_tree = cells_from_tree(&t)?;
    let regular = regular_subdivision(&f.weight.to_weight()?);
    let ok = splits == want && refined == expected && from_tree == expected && regular == expected;
    Ok(Outcome::new(
        ok,
        format!(
            "splits {splits:?}; refinement {}, tree cells {}, regular {} (expected {:?})",
            refined.cells().len(),
            from_tree.cells().len(),
            regular.cells().len(),
            sizes(expected.cells())
        ),
    ))
}

fn delta48_example() -> Result<Outcome> {
    let f = fixtures::delta48();
    let relations = enumerate_relations(4, 8)?.len();
    // the ordering under which the contraction reproduces w^in
    let mut resolved = None;
    for o in Ordering::ALL {
        let w = WeightDoc { ordering: o, ..f.weight.clone() }.to_weight()?;
        let win = WeightDoc { ordering: o, ..f.contracted_weight.clone() }.to_weight()?;
        if contraction_restriction(&w, f.contraction_label)? == win {
            resolved = Some((o, w));
            break;
        }
    }
    let Some((ordering, w)) = resolved else {
        return Ok(Outcome::new(false, "no entry ordering reproduces the contracted weight"));
    };
    let member = is_in_dressian(&w);
    let s = regular_subdivision(&w);
    let all_matroid = s.cells().iter().all(is_matroid_cell);
    let got = sizes(s.cells());
    let subsets = ordering.subsets(4, 8)?;
    let mut want: Vec<usize> = f.cells.iter().map(Vec::len).collect();
    want.sort_unstable();
    let listed: Vec<Cell> = f
        .cells
        .iter()
        .map(|c| Cell::new(c.iter().map(|&i| subsets[i])))
        .collect::<dressian_core::Result<_>>()?;
    let reproduced = listed.iter().filter(|c| s.cells().contains(c)).count();
    let ok = relations == 420 && member && s.cells().len() == 5 && all_matroid && got == want;
    Ok(Outcome::new(
        ok,
        format!(
            "{relations} relations, in Dressian {member}, ordering {ordering}, {} cells all matroidal {all_matroid}, \
             sizes {got:?} vs {want:?}, {reproduced} of {} fixture cells reproduced",
            s.cells().len(),
            listed.len()
        ),
    ))
}

fn class_cherries() -> Result<Outcome> {
    let d = fixtures::dr36();
    let mut bad = Vec::new();
    for c in &d.cones {
        let mut got = c.arrangement(d.n)?.cherries();
        got.sort();
        if got != c.cherry_sets(d.n)? {
            bad.push(format!("{}: {}", c.name, join(&got)));
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} classes match", d.cones.len())
        } else {
            format!("mismatch {}", bad.join("; "))
        },
    ))
}

fn join(v: &[KSubset]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", s.join(","))
}

struct MetrizedClass {
    name: String,
    arrangement: TreeArrangement,
    weight: WeightVector,
}

type Cached<T> = std::result::Result<T, String>;

fn metrized_classes() -> Cached<&'static [MetrizedClass]> {
    static CACHE: OnceLock<Cached<Vec<MetrizedClass>>> = OnceLock::new();
    let r = CACHE.get_or_init(|| {
        let d = fixtures::dr36();
        let mut out = Vec::new();
        for c in &d.cones {
            let a = c.arrangement(d.n).map_err(|e| e.to_string())?;
            if !is_abstract_arrangement(&a).map_err(|e| e.to_string())? {
                return Err(format!("{} is not an abstract arrangement", c.name));
            }
            let t = metrize_abstract_arrangement(&a)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{} admits no metrization", c.name))?;
            let w = weight_from_arrangement(&t).map_err(|e| e.to_string())?;
            out.push(MetrizedClass {
                name: c.name.clone(),
                arrangement: t,
                weight: w,
            });
        }
        Ok(out)
    });
    r.as_deref().map_err(Clone::clone)
}

fn classes() -> Result<&'static [MetrizedClass]> {
    metrized_classes().map_err(Error::Format)
}

fn metrization_membership() -> Result<Outcome> {
    let classes = classes()?;
    let mut dims = Vec::new();
    for c in classes {
        if !is_in_dressian(&c.weight) {
            return Ok(Outcome::new(false, format!("{}: weight not in the Dressian", c.name)));
        }
        dims.push(check_maximal(&c.weight)?.dimension);
    }
    let ok = dims.iter().all(|&d| d == DR36_MAXIMAL_DIMENSION);
    Ok(Outcome::new(
        ok,
        format!("{} classes metrized, cone dimensions {dims:?}, expected {DR36_MAXIMAL_DIMENSION}", classes.len()),
    ))
}

fn round_trip() -> Result<Outcome> {
    let mut bad = Vec::new();
    for c in classes()? {
        let back = arrangement_from_weight(&c.weight)?;
        if !back.to_abstract().equivalent(&c.arrangement.to_abstract()) {
            bad.push(c.name.clone());
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            "all seven classes round-trip".to_string()
        } else {
            format!("not equivalent: {}", bad.join(", "))
        },
    ))
}

struct Source {
    weight: WeightVector,
    adjacency: Adjacency,
}

fn source() -> Result<&'static Source> {
    static CACHE: OnceLock<Cached<Source>> = OnceLock::new();
    let r = CACHE.get_or_init(|| {
        let class = fixtures::dr36().adjacent_to_cone0.class;
        let classes = metrized_classes()?;
        let c = classes
            .iter()
            .find(|c| c.name == class)
            .ok_or_else(|| format!("no fixture named {class}"))?;
        let adjacency = adjacent_cones(&c.weight).map_err(|e| e.to_string())?;
        Ok(Source {
            weight: c.weight.clone(),
            adjacency,
        })
    });
    r.as_ref().map_err(|e| Error::Format(e.clone()))
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

fn sorted_cherry_multiset(sets: impl IntoIterator<Item = Vec<KSubset>>) -> Vec<Vec<KSubset>> {
    let mut v: Vec<Vec<KSubset>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort();
            s
        })
        .collect();
    v.sort();
    v
}

fn adjacency() -> Result<Outcome> {
    let src = source()?;
    let adj = &src.adjacency;
    let d = fixtures::dr36();
    let n = d.n;
    let base = arrangement_from_weight(&src.weight)?;
    let mut diffs = Vec::new();
    let mut computed = Vec::new();
    for nb in &adj.neighbours {
        let a = arrangement_from_weight(&nb.representative)?;
        diffs.push(generalized_whitehead_diff(&base, &a)?);
        computed.push(a.cherries());
    }
    let computed = sorted_cherry_multiset(computed);
    let table: Vec<Vec<KSubset>> = d
        .adjacent_to_cone0
        .neighbours
        .iter()
        .map(|nb| nb.cherries.iter().map(|c| digits(c, n)).collect())
        .collect::<Result<_>>()?;
    let sigma = permutations(n).into_iter().find(|p| {
        sorted_cherry_multiset(table.iter().map(|s| s.iter().map(|x| x.permute(p)).collect())) == computed
    });
    let whitehead = diffs
        .iter()
        .all(|x| matches!(x, WhiteheadDiff::GeneralizedWhitehead(dd) if dd.len() <= 3));
    let sizes: Vec<usize> = diffs
        .iter()
        .map(|x| match x {
            WhiteheadDiff::GeneralizedWhitehead(dd) => dd.len(),
            _ => 0,
        })
        .collect();
    let dims_ok = adj.neighbours.iter().all(|nb| nb.dimension == adj.source.dimension);
    let ok = adj.neighbours.len() == 8 && whitehead && sigma.is_some() && dims_ok;
    Ok(Outcome::new(
        ok,
        format!(
            "{} facets, {} neighbours, |D| {sizes:?}, neighbour dimensions equal source {dims_ok}, sigma {}",
            adj.facets.len(),
            adj.neighbours.len(),
            sigma.map_or("none".to_string(), |p| format!("{p:?}"))
        ),
    ))
}

fn wall_arrangements() -> Result<Outcome> {
    let src = source()?;
    let adj = &src.adjacency;
    let base = arrangement_from_weight(&src.weight)?;
    let mut problems = Vec::new();
    for (fi, facet) in adj.facets.iter().enumerate() {
        let wall = arrangement_from_weight(&facet.point)?;
        if !wall.trees().values().any(|t| t.internal_vertices().iter().any(|&v| t.degree(v) == 4)) {
            problems.push(format!("facet {fi}: no degree-4 vertex"));
        }
        for nb in adj.neighbours.iter().filter(|nb| nb.facet == fi) {
            let other = arrangement_from_weight(&nb.representative)?;
            for (j, t) in wall.trees() {
                let (a, b) = (&base.trees()[j], &other.trees()[j]);
                let resolved = a.is_trivalent() && b.is_trivalent() && a.refines(t) && b.refines(t);
                if !resolved {
                    problems.push(format!("facet {fi} tree {j}"));
                }
            }
        }
    }
    Ok(Outcome::new(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} walls checked", adj.facets.len())
        } else {
            problems.join("; ")
        },
    ))
}

/// A random trivalent tree on `labels` by repeated edge subdivision, with
/// lengths `p / q`, `p` in `[1, 8]`, `q` in `[1, 4]`.
pub fn random_trivalent_tree(rng: &mut impl Rng, labels: &[u32]) -> Result<MetricTree> {
    let mut order = labels.to_vec();
    order.shuffle(rng);
    let mut vlabels: Vec<Option<u32>> = vec![None, Some(order[0]), Some(order[1]), Some(order[2])];
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (0, 3)];
    for &l in &order[3..] {
        let e = rng.gen_range(0..edges.len());
        let (u, v) = edges[e];
        let x = vlabels.len();
        vlabels.push(None);
        let y = vlabels.len();
        vlabels.push(Some(l));
        edges[e] = (u, x);
        edges.push((x, v));
        edges.push((x, y));
    }
    let edges = edges
        .into_iter()
        .map(|(u, v)| (u, v, frac(rng.gen_range(1..=8), rng.gen_range(1..=4))))
        .collect();
    Ok(MetricTree::new(vlabels, edges)?)
}

fn random_shift(rng: &mut impl Rng, w: &WeightVector) -> Result<WeightVector> {
    let a: Vec<Rational> = (0..w.n()).map(|_| frac(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect();
    Ok(w.lineality_shift(&a)?)
}

/// `x -> max(0, x(A) - (k - μ))`, whose regular subdivision is the split
/// `(A, B; μ)`.
fn split_height(h: &HypersimplexSplit) -> Result<WeightVector> {
    let cut = (h.k() - h.mu()) as i64;
    Ok(WeightVector::from_fn(h.k(), h.n(), |s| {
        let over = s.elements().filter(|&i| h.a().contains(i)).count() as i64 - cut;
        int(over.max(0))
    })?)
}

/// Positive combination of one to three random split heights.
fn random_split_sum(rng: &mut impl Rng, k: u32, n: u32) -> Result<WeightVector> {
    let mut w = WeightVector::zero(k, n)?;
    let ground: Vec<u32> = (1..=n).collect();
    let count = rng.gen_range(1..=3);
    let mut made = 0;
    while made < count {
        let size = rng.gen_range(1..n as usize);
        let a: Vec<u32> = ground.choose_multiple(rng, size).copied().collect();
        let mu = rng.gen_range(1..k);
        let Ok(h) = HypersimplexSplit::new(k, n, &a, mu) else {
            continue;
        };
        w = w.add(&split_height(&h)?.scale(&int(rng.gen_range(1..=3))));
        made += 1;
    }
    Ok(w)
}

fn random_weight(rng: &mut impl Rng, k: u32, n: u32, mode: usize) -> Result<WeightVector> {
    let w = match mode {
        0 => WeightVector::from_fn(k, n, |_| int(rng.gen_range(0..=2)))?,
        1 => random_split_sum(rng, k, n)?,
        _ => {
            let mut w = random_split_sum(rng, k, n)?;
            let subsets = enumerate_ksubsets(k, n)?;
            let s = subsets[rng.gen_range(0..subsets.len())];
            let v = w.get(&s) + int(if rng.gen() { 1 } else { -1 });
            w.set(&s, v);
            w
        }
    };
    random_shift(rng, &w)
}

fn random_kn(rng: &mut impl Rng) -> (u32, u32) {
    if rng.gen() {
        (2, rng.gen_range(4..=6))
    } else {
        (3, rng.gen_range(5..=6))
    }
}

fn property_dressian_matroidal(rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let (mut yes, mut no) = (0, 0);
    for i in 0..PROPERTY_INSTANCES {
        let (k, n) = random_kn(rng);
        let w = random_weight(rng, k, n, i % 3)?;
        let member = is_in_dressian(&w);
        if member != is_matroidal(&regular_subdivision(&w)) {
            return Ok(Err(format!("(a) disagrees on {:?}", w.values())));
        }
        if member {
            yes += 1;
        } else {
            no += 1;
        }
    }
    if yes == 0 || no == 0 {
        return Ok(Err(format!("(a) one-sided sample: {yes} in, {no} out")));
    }
    Ok(Ok(format!("(a) {yes} in / {no} out")))
}

fn property_four_point(rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let (mut yes, mut no) = (0, 0);
    for i in 0..PROPERTY_INSTANCES {
        let m = rng.gen_range(4..=6u32);
        let labels: Vec<u32> = (1..=m).collect();
        let d = match i % 3 {
            0 => Dissimilarity::from_fn(&labels, |_, _| int(rng.gen_range(1..=5))),
            1 => random_trivalent_tree(rng, &labels)?.tree_metric(),
            _ => {
                let t = random_trivalent_tree(rng, &labels)?.tree_metric();
                let (a, b) = (rng.gen_range(1..m), m);
                Dissimilarity::from_fn(&labels, |i, j| {
                    let v = t.get(i, j).clone();
                    if (i, j) == (a, b) {
                        v + frac(1, 2)
                    } else {
                        v
                    }
                })
            }
        };
        let w = WeightVector::from_fn(2, m, |s| {
            let e = s.to_vec();
            -d.get(e[0], e[1]).clone()
        })?;
        let tree = d.is_tree_metric();
        if tree != is_in_dressian(&w) {
            return Ok(Err(format!("(b) disagrees on m = {m}")));
        }
        if tree {
            yes += 1;
        } else {
            no += 1;
        }
    }
    if yes == 0 || no == 0 {
        return Ok(Err(format!("(b) one-sided sample: {yes} tree, {no} not")));
    }
    Ok(Ok(format!("(b) {yes} tree / {no} not")))
}

fn property_reconstruct(rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    for _ in 0..PROPERTY_INSTANCES {
        let m = rng.gen_range(4..=8u32);
        let labels: Vec<u32> = (1..=m).collect();
        let t = random_trivalent_tree(rng, &labels)?;
        let back = reconstruct_tree(&t.tree_metric())?;
        if !back.labelled_isomorphic(&t, true) {
            return Ok(Err(format!("(c) reconstruction differs on {m} leaves")));
        }
    }
    Ok(Ok(format!("(c) {PROPERTY_INSTANCES} trees")))
}

fn property_tree_cells() -> Result<std::result::Result<String, String>> {
    let mut count = 0;
    for m in 4..=7u32 {
        let labels: Vec<u32> = (1..=m).collect();
        for t in all_trivalent_topologies(&labels) {
            let refined = common_refinement(2, m, &hypersimplex_splits_of_tree(&t)?)?;
            if cells_from_tree(&t)? != refined {
                return Ok(Err(format!("(d) differs on a tree with {m} leaves")));
            }
            count += 1;
        }
    }
    Ok(Ok(format!("(d) {count} topologies")))
}

fn property_signature_invariance(rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let mut done = 0;
    while done < PROPERTY_INSTANCES {
        let (k, n) = random_kn(rng);
        let w = random_weight(rng, k, n, 1)?;
        if !is_in_dressian(&w) {
            continue;
        }
        let sig = cone_signature(&w)?;
        let shifted = random_shift(rng, &w)?;
        let scaled = w.scale(&frac(rng.gen_range(1..=9), rng.gen_range(1..=9)));
        if cone_signature(&shifted)? != sig || cone_signature(&scaled)? != sig {
            return Ok(Err("(e) signature changed".into()));
        }
        done += 1;
    }
    Ok(Ok(format!("(e) {done} weights")))
}

fn oracle_equivalences() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);
    let parts = [
        property_dressian_matroidal(&mut rng)?,
        property_four_point(&mut rng)?,
        property_reconstruct(&mut rng)?,
        property_tree_cells()?,
        property_signature_invariance(&mut rng)?,
    ];
    let ok = parts.iter().all(|p| p.is_ok());
    let detail: Vec<String> = parts.into_iter().map(|p| p.unwrap_or_else(|e| e)).collect();
    Ok(Outcome::new(ok, detail.join(", ")))
}

fn generalized_consistency() -> Result<Outcome> {
    let w = fixtures::delta48().weight.to_weight()?;
    let tuples = recursive_contraction_arrangement(&w)?;
    let arr = arrangement_from_weight(&w)?;
    let mut groups: BTreeMap<KSubset, Vec<&MetricTree>> = BTreeMap::new();
    for (tuple, t) in &tuples {
        groups.entry(KSubset::new(tuple, w.n())?).or_default().push(t);
    }
    let collapse = groups
        .iter()
        .all(|(j, ts)| ts.iter().all(|t| t.labelled_isomorphic(&arr.trees()[j], true)));
    let mut k3 = 0;
    for c in classes()? {
        let a = arrangement_from_weight(&c.weight)?;
        let rec = recursive_contraction_arrangement(&c.weight)?;
        let same = rec.len() == a.trees().len()
            && rec
                .iter()
                .all(|(tuple, t)| KSubset::new(tuple, 6).is_ok_and(|j| t.labelled_isomorphic(&a.trees()[&j], true)));
        if same {
            k3 += 1;
        }
    }
    let ok = tuples.len() == 56 && groups.len() == 28 && arr.trees().len() == 28 && collapse && k3 == 7;
    Ok(Outcome::new(
        ok,
        format!(
            "{} tuples into {} sets, trees agree {collapse}; k = 3 fixtures coinciding {k3} of 7",
            tuples.len(),
            groups.len()
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_trees_are_trivalent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in 3..=8 {
            let labels: Vec<u32> = (1..=m).collect();
            let t = random_trivalent_tree(&mut rng, &labels).unwrap();
            assert!(t.is_trivalent());
            assert_eq!(t.leaves(), labels);
        }
    }

    #[test]
    fn split_heights_induce_their_split() {
        let h = HypersimplexSplit::new(3, 6, &[1, 2, 3], 1).unwrap();
        let s = regular_subdivision(&split_height(&h).unwrap());
        let (a, b) = dressian_core::split::split_subdivision(&h);
        assert_eq!(s, dressian_core::MatroidalSubdivision::new(3, 6, [a, b]));
    }

    #[test]
    fn permutations_of_three() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(6).len(), 720);
    }
}
