//! Leaf-labelled metric trees.
//!
//! Trees are unrooted, have no internal vertex of degree two, and carry a
//! nonnegative rational length on every edge. Leaves are labelled by
//! distinct integers in `1..=63`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::{KSubset, MAX_N};

/// A set of leaf labels.
pub type LeafSet = KSubset;

fn leaf_set(labels: impl IntoIterator<Item = u32>) -> LeafSet {
    let mut bits = 0u64;
    for l in labels {
        bits |= 1 << (l - 1);
    }
    KSubset::from_bits(bits, MAX_N)
}

/// A bipartition of the leaves cut out by an edge. `a` holds the smallest
/// label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    pub a: LeafSet,
    pub b: LeafSet,
    pub weight: Rational,
}

impl Split {
    pub fn new(side: LeafSet, leaves: LeafSet, weight: Rational) -> Self {
        let other = KSubset::from_bits(leaves.bits() & !side.bits(), MAX_N);
        let (a, b) = if side.bits() & leaves.bits() & leaves.bits().wrapping_neg() != 0 {
            (side, other)
        } else {
            (other, side)
        };
        Split { a, b, weight }
    }

    pub fn is_trivial(&self) -> bool {
        self.a.k() <= 1 || self.b.k() <= 1
    }

    /// Two splits are compatible if one of the four side intersections is empty.
    pub fn compatible(&self, other: &Split) -> bool {
        self.a.is_disjoint(&other.a)
            || self.a.is_disjoint(&other.b)
            || self.b.is_disjoint(&other.a)
            || self.b.is_disjoint(&other.b)
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: Rational,
}

/// Which of the two alternative resolutions a Whitehead move produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WhiteheadChoice {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricTree {
    labels: Vec<Option<u32>>,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl MetricTree {
    /// Builds and validates a tree from vertex labels and edges
    /// `(u, v, length)`.
    pub fn new(labels: Vec<Option<u32>>, edges: Vec<(usize, usize, Rational)>) -> Result<Self> {
        let nv = labels.len();
        let mut adj = vec![Vec::new(); nv];
        let mut es = Vec::with_capacity(edges.len());
        for (id, (u, v, length)) in edges.into_iter().enumerate() {
            if u >= nv || v >= nv || u == v {
                return Err(Error::param(alloc::format!("bad edge ({u}, {v})")));
            }
            if length.is_negative() {
                return Err(Error::param(alloc::format!("negative edge length {length}")));
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
            es.push(Edge { u, v, length });
        }
        let tree = MetricTree {
            labels,
            edges: es,
            adj,
        };
        tree.validate()?;
        Ok(tree)
    }

    fn validate(&self) -> Result<()> {
        let nv = self.labels.len();
        if nv < 2 || self.edges.len() != nv - 1 {
            return Err(Error::param("a tree needs at least two vertices and |E| = |V| - 1"));
        }
        // connectivity
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::param("tree is not connected"));
        }
        let mut used = 0u64;
        for (v, label) in self.labels.iter().enumerate() {
            let deg = self.adj[v].len();
            match label {
                Some(l) => {
                    if *l == 0 || *l > MAX_N {
                        return Err(Error::param(alloc::format!("leaf label {l} out of range")));
                    }
                    if used & (1 << (l - 1)) != 0 {
                        return Err(Error::param(alloc::format!("duplicate leaf label {l}")));
                    }
                    used |= 1 << (l - 1);
                    if deg != 1 {
                        return Err(Error::param(alloc::format!("leaf {l} has degree {deg}")));
                    }
                }
                None => {
                    if deg < 3 {
                        return Err(Error::param(alloc::format!(
                            "internal vertex {v} has degree {deg}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The tree with one internal vertex joined to every leaf.
    pub fn star(leaves: &[u32], length: Rational) -> Result<Self> {
        let mut labels = vec![None];
        let mut edges = Vec::new();
        for (i, &l) in leaves.iter().enumerate() {
            labels.push(Some(l));
            edges.push((0, i + 1, length.clone()));
        }
        MetricTree::new(labels, edges)
    }

    /// Builds the tree with the given nontrivial splits (`side` sets with
    /// weights) and pendant edge lengths. The splits must be pairwise
    /// compatible.
    pub fn from_splits(
        leaves: &[u32],
        splits: &[(LeafSet, Rational)],
        pendant: &BTreeMap<u32, Rational>,
    ) -> Result<Self> {
        let mut leaves: Vec<u32> = leaves.to_vec();
        leaves.sort_unstable();
        leaves.dedup();
        let all = leaf_set(leaves.iter().copied());
        let pend = |l: u32| pendant.get(&l).cloned().unwrap_or_else(Rational::zero);
        if leaves.len() < 2 {
            return Err(Error::param("a tree needs at least two leaves"));
        }
        if leaves.len() == 2 {
            let len = pend(leaves[0]) + pend(leaves[1]);
            return MetricTree::new(
                vec![Some(leaves[0]), Some(leaves[1])],
                vec![(0, 1, len)],
            );
        }
        let root = leaves[0];
        // clusters avoid the root leaf
        let mut clusters: Vec<(u64, Rational)> = Vec::new();
        for (side, w) in splits {
            let s = Split::new(*side, all, w.clone());
            if s.is_trivial() || s.a.bits() | s.b.bits() != all.bits() {
                return Err(Error::param(alloc::format!("{s} is not a nontrivial split")));
            }
            if clusters.iter().any(|(c, _)| *c == s.b.bits()) {
                return Err(Error::param(alloc::format!("duplicate split {s}")));
            }
            clusters.push((s.b.bits(), w.clone()));
        }
        for (i, (x, _)) in clusters.iter().enumerate() {
            for (y, _) in &clusters[i + 1..] {
                let nested = x & y == *x || x & y == *y || x & y == 0;
                if !nested {
                    return Err(Error::param("splits are not pairwise compatible"));
                }
            }
        }
        clusters.sort_by_key(|(c, _)| c.count_ones());
        // vertex 0 is the center (cluster = all leaves but the root)
        let mut labels: Vec<Option<u32>> = vec![None];
        let cluster_vertex: Vec<usize> = (0..clusters.len()).map(|i| i + 1).collect();
        labels.extend(clusters.iter().map(|_| None));
        let mut edges = Vec::new();
        let parent_of = |bits: u64, skip: Option<usize>| -> usize {
            clusters
                .iter()
                .enumerate()
                .filter(|(j, (c, _))| Some(*j) != skip && c & bits == bits && *c != bits)
                .min_by_key(|(_, (c, _))| c.count_ones())
                .map_or(0, |(j, _)| cluster_vertex[j])
        };
        for (i, (c, w)) in clusters.iter().enumerate() {
            edges.push((parent_of(*c, Some(i)), cluster_vertex[i], w.clone()));
        }
        for &l in &leaves {
            let v = labels.len();
            labels.push(Some(l));
            let parent = if l == root { 0 } else { parent_of(1 << (l - 1), None) };
            edges.push((parent, v, pend(l)));
        }
        MetricTree::new(labels, edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: usize) -> Option<u32> {
        self.labels[v]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn leaves(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.labels.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn leaf_set(&self) -> LeafSet {
        leaf_set(self.labels.iter().flatten().copied())
    }

    pub fn leaf_vertex(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|l| *l == Some(label))
    }

    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| self.labels[v].is_none()).collect()
    }

    pub fn is_trivalent(&self) -> bool {
        self.internal_vertices().iter().all(|&v| self.adj[v].len() == 3)
    }

    pub fn is_internal_edge(&self, e: usize) -> bool {
        let Edge { u, v, .. } = self.edges[e];
        self.labels[u].is_none() && self.labels[v].is_none()
    }

    /// Leaves reachable from `from` without crossing back to `via`.
    fn side(&self, from: usize, via: usize) -> u64 {
        let mut bits = 0u64;
        let mut stack = vec![(from, via)];
        while let Some((x, parent)) = stack.pop() {
            if let Some(l) = self.labels[x] {
                bits |= 1 << (l - 1);
            }
            for &(y, _) in &self.adj[x] {
                if y != parent {
                    stack.push((y, x));
                }
            }
        }
        bits
    }

    /// The split cut out by edge `e`.
    pub fn edge_split(&self, e: usize) -> Split {
        let Edge { u, v, ref length } = self.edges[e];
        let side = KSubset::from_bits(self.side(v, u), MAX_N);
        Split::new(side, self.leaf_set(), length.clone())
    }

    /// One split per internal edge, sorted.
    pub fn splits(&self) -> Vec<Split> {
        let mut out: Vec<Split> = (0..self.edges.len())
            .filter(|&e| self.is_internal_edge(e))
            .map(|e| self.edge_split(e))
            .collect();
        out.sort();
        out
    }

    /// Topology as the set of nontrivial split sides (`a` sides).
    pub fn split_sides(&self) -> BTreeSet<LeafSet> {
        (0..self.edges.len())
            .filter(|&e| self.is_internal_edge(e))
            .map(|e| self.edge_split(e).a)
            .collect()
    }

    pub fn find_edge(&self, side: &LeafSet) -> Option<usize> {
        let all = self.leaf_set();
        let s = Split::new(*side, all, Rational::zero());
        (0..self.edges.len()).find(|&e| self.edge_split(e).a == s.a)
    }

    pub fn pendant_length(&self, label: u32) -> Option<&Rational> {
        let v = self.leaf_vertex(label)?;
        Some(&self.edges[self.adj[v][0].1].length)
    }

    /// Leaf-to-leaf path lengths.
    pub fn tree_metric(&self) -> Dissimilarity {
        let leaves = self.leaves();
        let m = leaves.len();
        let mut d = vec![vec![Rational::zero(); m]; m];
        for (i, &li) in leaves.iter().enumerate() {
            let start = self.leaf_vertex(li).expect("leaf exists");
            let mut dist: Vec<Option<Rational>> = vec![None; self.labels.len()];
            dist[start] = Some(Rational::zero());
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let dx = dist[x].clone().expect("visited");
                for &(y, e) in &self.adj[x] {
                    if dist[y].is_none() {
                        dist[y] = Some(&dx + &self.edges[e].length);
                        stack.push(y);
                    }
                }
            }
            for (j, &lj) in leaves.iter().enumerate() {
                let v = self.leaf_vertex(lj).expect("leaf exists");
                d[i][j] = dist[v].clone().expect("connected");
            }
        }
        Dissimilarity { labels: leaves, d }
    }

    /// Edge ids on the path between two leaves.
    pub fn path_edges(&self, i: u32, j: u32) -> Option<Vec<usize>> {
        let a = self.leaf_vertex(i)?;
        let b = self.leaf_vertex(j)?;
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.labels.len()];
        let mut seen = vec![false; self.labels.len()];
        seen[a] = true;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &(y, e) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, e));
                    stack.push(y);
                }
            }
        }
        let mut out = Vec::new();
        let mut x = b;
        while let Some((prev, e)) = via[x] {
            out.push(e);
            x = prev;
        }
        out.reverse();
        Some(out)
    }

    /// Same topology with new lengths, one per edge id.
    pub fn with_edge_lengths(&self, lengths: &[Rational]) -> Result<Self> {
        if lengths.len() != self.edges.len() {
            return Err(Error::param("one length per edge is required"));
        }
        let edges = self
            .edges
            .iter()
            .zip(lengths)
            .map(|(e, l)| (e.u, e.v, l.clone()))
            .collect();
        MetricTree::new(self.labels.clone(), edges)
    }

    /// Whether the path between two leaves passes through vertex `v`.
    pub fn path_through(&self, i: u32, j: u32, v: usize) -> bool {
        let (Some(a), Some(b)) = (self.leaf_vertex(i), self.leaf_vertex(j)) else {
            return false;
        };
        if a == v || b == v {
            return true;
        }
        // v separates a and b iff they are in different components of T - v
        let comp = |x: usize| {
            self.adj[v]
                .iter()
                .position(|&(y, _)| y == x || self.reaches(y, v, x))
        };
        comp(a) != comp(b)
    }

    fn reaches(&self, from: usize, avoid: usize, target: usize) -> bool {
        let mut stack = vec![(from, avoid)];
        while let Some((x, parent)) = stack.pop() {
            if x == target {
                return true;
            }
            for &(y, _) in &self.adj[x] {
                if y != parent {
                    stack.push((y, x));
                }
            }
        }
        false
    }

    /// Minimal leaf label reachable from `from` away from `via`.
    fn min_leaf(&self, from: usize, via: usize) -> u32 {
        self.side(from, via).trailing_zeros() + 1
    }

    /// Replaces the split of internal edge `e` by one of its two alternative
    /// resolutions. The new edge keeps the old length.
    pub fn whitehead_move(&self, e: usize, choice: WhiteheadChoice) -> Result<Self> {
        if e >= self.edges.len() || !self.is_internal_edge(e) {
            return Err(Error::param(alloc::format!("edge {e} is not an internal edge")));
        }
        let Edge { u, v, .. } = self.edges[e];
        if self.adj[u].len() != 3 || self.adj[v].len() != 3 {
            return Err(Error::param("whitehead move needs degree-3 endpoints"));
        }
        let mut side_u: Vec<(u32, usize)> = self.adj[u]
            .iter()
            .filter(|&&(y, _)| y != v)
            .map(|&(y, id)| (self.min_leaf(y, u), id))
            .collect();
        let mut side_v: Vec<(u32, usize)> = self.adj[v]
            .iter()
            .filter(|&&(y, _)| y != u)
            .map(|&(y, id)| (self.min_leaf(y, v), id))
            .collect();
        side_u.sort_unstable();
        side_v.sort_unstable();
        let moved_u = side_u[1].1;
        let moved_v = match choice {
            WhiteheadChoice::First => side_v[0].1,
            WhiteheadChoice::Second => side_v[1].1,
        };
        let mut edges: Vec<(usize, usize, Rational)> = self
            .edges
            .iter()
            .map(|ed| (ed.u, ed.v, ed.length.clone()))
            .collect();
        let swap_end = |edge: &mut (usize, usize, Rational), from: usize, to: usize| {
            if edge.0 == from {
                edge.0 = to;
            } else {
                edge.1 = to;
            }
        };
        swap_end(&mut edges[moved_u], u, v);
        swap_end(&mut edges[moved_v], v, u);
        MetricTree::new(self.labels.clone(), edges)
    }

    /// Pairs of leaves adjacent to a common internal vertex of degree 3.
    pub fn cherries(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for v in self.internal_vertices() {
            if self.adj[v].len() != 3 {
                continue;
            }
            let mut ls: Vec<u32> = self.adj[v].iter().filter_map(|&(y, _)| self.labels[y]).collect();
            ls.sort_unstable();
            for i in 0..ls.len() {
                for j in i + 1..ls.len() {
                    out.push((ls[i], ls[j]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn has_cherry(&self, i: u32, j: u32) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        self.cherries().contains(&(i, j))
    }

    /// Removes a leaf and suppresses a resulting degree-2 vertex, merging the
    /// two edge lengths.
    pub fn delete_leaf(&self, label: u32) -> Result<Self> {
        let x = self
            .leaf_vertex(label)
            .ok_or_else(|| Error::param(alloc::format!("unknown leaf {label}")))?;
        if self.leaves().len() < 3 {
            return Err(Error::param("cannot delete a leaf from a tree with fewer than 3 leaves"));
        }
        let (p, ex) = self.adj[x][0];
        let mut keep_edges: Vec<(usize, usize, Rational)> = Vec::new();
        let mut merged: Option<(usize, Rational)> = None;
        let suppress = self.labels[p].is_none() && self.adj[p].len() == 3;
        for (id, ed) in self.edges.iter().enumerate() {
            if id == ex {
                continue;
            }
            if suppress && (ed.u == p || ed.v == p) {
                let other = if ed.u == p { ed.v } else { ed.u };
                match merged.take() {
                    None => merged = Some((other, ed.length.clone())),
                    Some((o, len)) => keep_edges.push((o, other, len + &ed.length)),
                }
                continue;
            }
            keep_edges.push((ed.u, ed.v, ed.length.clone()));
        }
        let removed: Vec<usize> = if suppress { vec![x, p] } else { vec![x] };
        let remap: Vec<Option<usize>> = {
            let mut next = 0;
            (0..self.labels.len())
                .map(|v| {
                    if removed.contains(&v) {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        };
        let labels = (0..self.labels.len())
            .filter(|v| !removed.contains(v))
            .map(|v| self.labels[v])
            .collect();
        let edges = keep_edges
            .into_iter()
            .map(|(u, v, l)| (remap[u].expect("kept"), remap[v].expect("kept"), l))
            .collect();
        MetricTree::new(labels, edges)
    }

    /// Restriction to a subset of the leaves.
    pub fn restrict(&self, keep: &[u32]) -> Result<Self> {
        let mut t = self.clone();
        for l in self.leaves() {
            if !keep.contains(&l) {
                t = t.delete_leaf(l)?;
            }
        }
        Ok(t)
    }

    /// Applies `label -> perm[label - 1]` to every leaf.
    pub fn relabel(&self, perm: &[u32]) -> Self {
        MetricTree {
            labels: self.labels.iter().map(|l| l.map(|x| perm[x as usize - 1])).collect(),
            ..self.clone()
        }
    }

    /// Same topology with every edge length set to one.
    pub fn with_unit_lengths(&self) -> Self {
        let mut t = self.clone();
        for e in t.edges.iter_mut() {
            e.length = Rational::one();
        }
        t
    }

    /// Equal leaf sets and equal split sets; with `metric`, equal lengths on
    /// all edges as well.
    pub fn labelled_isomorphic(&self, other: &MetricTree, metric: bool) -> bool {
        if self.leaf_set() != other.leaf_set() {
            return false;
        }
        if !metric {
            return self.split_sides() == other.split_sides();
        }
        self.splits() == other.splits()
            && self
                .leaves()
                .into_iter()
                .all(|l| self.pendant_length(l) == other.pendant_length(l))
    }

    pub fn same_topology(&self, other: &MetricTree) -> bool {
        self.labelled_isomorphic(other, false)
    }

    /// Whether every split of `coarse` is a split of `self`.
    pub fn refines(&self, coarse: &MetricTree) -> bool {
        self.leaf_set() == coarse.leaf_set() && coarse.split_sides().is_subset(&self.split_sides())
    }

    /// Whether the two trees are the two alternative resolutions of one edge.
    pub fn is_whitehead_related(&self, other: &MetricTree) -> Result<bool> {
        if self.leaf_set() != other.leaf_set() {
            return Err(Error::param("trees have different leaf sets"));
        }
        if !self.is_trivalent() || !other.is_trivalent() {
            return Ok(false);
        }
        let a = self.split_sides();
        let b = other.split_sides();
        Ok(a.symmetric_difference(&b).count() == 2)
    }
}

/// A symmetric dissimilarity with zero diagonal on a labelled point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dissimilarity {
    labels: Vec<u32>,
    d: Vec<Vec<Rational>>,
}

impl Dissimilarity {
    /// Builds from a function on label pairs; only `f(i, j)` with `i < j` is
    /// queried.
    pub fn from_fn(labels: &[u32], mut f: impl FnMut(u32, u32) -> Rational) -> Self {
        let mut labels = labels.to_vec();
        labels.sort_unstable();
        let m = labels.len();
        let mut d = vec![vec![Rational::zero(); m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let v = f(labels[i], labels[j]);
                d[i][j] = v.clone();
                d[j][i] = v;
            }
        }
        Dissimilarity { labels, d }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    fn index(&self, l: u32) -> usize {
        self.labels.binary_search(&l).expect("label in dissimilarity")
    }

    pub fn get(&self, i: u32, j: u32) -> &Rational {
        &self.d[self.index(i)][self.index(j)]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Dissimilarity {
            labels: self.labels.clone(),
            d: self.d.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }

    /// First quartet violating the four-point condition (maximum of the three
    /// pair sums attained at least twice).
    pub fn four_point_violation(&self) -> Option<[u32; 4]> {
        let m = self.labels.len();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for e in c + 1..m {
                        let d = &self.d;
                        let s = [
                            &d[a][b] + &d[c][e],
                            &d[a][c] + &d[b][e],
                            &d[a][e] + &d[b][c],
                        ];
                        let max = s.iter().max().expect("three sums");
                        if s.iter().filter(|x| *x == max).count() < 2 {
                            return Some([
                                self.labels[a],
                                self.labels[b],
                                self.labels[c],
                                self.labels[e],
                            ]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_tree_metric(&self) -> bool {
        self.four_point_violation().is_none()
    }

    /// Isolation index of the split `side | rest`.
    fn isolation_index(&self, side: &[usize], rest: &[usize]) -> Rational {
        let d = &self.d;
        let mut best: Option<Rational> = None;
        for &a in side {
            for &a2 in side {
                for &b in rest {
                    for &b2 in rest {
                        let x = &d[a][b] + &d[a2][b2];
                        let y = &d[a][b2] + &d[a2][b];
                        let v = x.max(y) - &d[a][a2] - &d[b][b2];
                        if best.as_ref().is_none_or(|cur| v < *cur) {
                            best = Some(v);
                        }
                    }
                }
            }
        }
        best.expect("both sides nonempty") / Rational::from_integer(2.into())
    }
}

/// Reconstructs the unique tree realizing a tree metric, via isolation
/// indices of all bipartitions. Zero-weight splits are contracted.
pub fn reconstruct_tree(d: &Dissimilarity) -> Result<MetricTree> {
    if let Some(quartet) = d.four_point_violation() {
        return Err(Error::NotTreeMetric { quartet });
    }
    let m = d.labels.len();
    if m < 2 {
        return Err(Error::Reconstruction("need at least two points".into()));
    }
    if m > 20 {
        return Err(Error::Reconstruction("too many points for split enumeration".into()));
    }
    let mut pendant = BTreeMap::new();
    let mut splits = Vec::new();
    // masks over positions; position 0 is always on the `side`
    for mask in 0u32..(1 << (m - 1)) {
        let side_mask = (mask << 1) | 1;
        let rest_mask = !side_mask & ((1 << m) - 1);
        if rest_mask == 0 {
            continue;
        }
        let side: Vec<usize> = (0..m).filter(|i| side_mask >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..m).filter(|i| rest_mask >> i & 1 == 1).collect();
        let idx = d.isolation_index(&side, &rest);
        if side.len() == 1 || rest.len() == 1 {
            let leaf = if side.len() == 1 { side[0] } else { rest[0] };
            if m == 2 {
                continue;
            }
            if idx.is_negative() {
                return Err(Error::Reconstruction(alloc::format!(
                    "negative pendant length {idx} at leaf {}",
                    d.labels[leaf]
                )));
            }
            pendant.insert(d.labels[leaf], idx);
        } else if idx.is_positive() {
            let labels = side.iter().map(|&i| d.labels[i]);
            splits.push((leaf_set(labels), idx));
        }
    }
    let tree = if m == 2 {
        let len = d.d[0][1].clone();
        if len.is_negative() {
            return Err(Error::Reconstruction("negative distance".into()));
        }
        MetricTree::new(vec![Some(d.labels[0]), Some(d.labels[1])], vec![(0, 1, len)])?
    } else {
        MetricTree::from_splits(&d.labels, &splits, &pendant)
            .map_err(|e| Error::Reconstruction(alloc::format!("{e}")))?
    };
    if tree.tree_metric() != *d {
        return Err(Error::Reconstruction(
            "split decomposition does not reproduce the metric".into(),
        ));
    }
    Ok(tree)
}

/// The caterpillar `C(ab, c.., de)`: cherries `{a, b}` and `{d, e}` with the
/// middle leaves attached in order along the spine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Caterpillar {
    pub left: (u32, u32),
    pub middle: Vec<u32>,
    pub right: (u32, u32),
}

impl Caterpillar {
    pub fn new(left: (u32, u32), middle: &[u32], right: (u32, u32)) -> Self {
        Caterpillar {
            left,
            middle: middle.to_vec(),
            right,
        }
    }

    /// Parses `C(25,4,36)`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::param(alloc::format!("bad caterpillar {s:?}"));
        let inner = s
            .trim()
            .strip_prefix("C(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let digits = |p: &str| -> Result<Vec<u32>> {
            p.chars()
                .map(|c| c.to_digit(10).filter(|&d| d > 0).ok_or_else(bad))
                .collect()
        };
        let l = digits(parts[0])?;
        let mid = digits(parts[1])?;
        let r = digits(parts[2])?;
        if l.len() != 2 || r.len() != 2 || mid.is_empty() {
            return Err(bad());
        }
        Ok(Caterpillar::new((l[0], l[1]), &mid, (r[0], r[1])))
    }

    pub fn leaves(&self) -> Vec<u32> {
        let mut v = vec![self.left.0, self.left.1, self.right.0, self.right.1];
        v.extend(&self.middle);
        v.sort_unstable();
        v
    }

    /// The trivalent tree with unit edge lengths.
    pub fn to_tree(&self) -> Result<MetricTree> {
        let mut splits = Vec::new();
        let mut acc = vec![self.left.0, self.left.1];
        splits.push((leaf_set(acc.iter().copied()), Rational::one()));
        for &c in &self.middle {
            acc.push(c);
            splits.push((leaf_set(acc.iter().copied()), Rational::one()));
        }
        let leaves = self.leaves();
        let pendant = leaves.iter().map(|&l| (l, Rational::one())).collect();
        MetricTree::from_splits(&leaves, &splits, &pendant)
    }
}

impl fmt::Display for Caterpillar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mid: String = self.middle.iter().map(|c| alloc::format!("{c}")).collect();
        write!(
            f,
            "C({}{},{},{}{})",
            self.left.0, self.left.1, mid, self.right.0, self.right.1
        )
    }
}

/// All trivalent topologies on the given leaves (unit lengths), by stepwise
/// leaf insertion. There are `(2m - 5)!!` of them.
pub fn all_trivalent_topologies(leaves: &[u32]) -> Vec<MetricTree> {
    let mut leaves = leaves.to_vec();
    leaves.sort_unstable();
    if leaves.len() < 3 {
        return MetricTree::from_splits(&leaves, &[], &BTreeMap::new())
            .into_iter()
            .collect();
    }
    let unit = Rational::one();
    let mut trees = vec![MetricTree::star(&leaves[..3], unit.clone()).expect("3-star")];
    for &l in &leaves[3..] {
        let mut next = Vec::new();
        for t in &trees {
            for e in 0..t.edges.len() {
                let mut labels = t.labels.clone();
                let mut edges: Vec<(usize, usize, Rational)> =
                    t.edges.iter().map(|ed| (ed.u, ed.v, ed.length.clone())).collect();
                let w = labels.len();
                labels.push(None);
                let x = labels.len();
                labels.push(Some(l));
                let (u, v, _) = edges[e].clone();
                edges[e] = (u, w, unit.clone());
                edges.push((w, v, unit.clone()));
                edges.push((w, x, unit.clone()));
                next.push(MetricTree::new(labels, edges).expect("insertion keeps a tree"));
            }
        }
        trees = next;
    }
    trees
}

/// All topologies (any degrees) on the given leaves, as pairwise compatible
/// nontrivial split systems. Exponential; meant for five or six leaves.
pub fn all_topologies(leaves: &[u32]) -> Vec<MetricTree> {
    let mut leaves = leaves.to_vec();
    leaves.sort_unstable();
    let all = leaf_set(leaves.iter().copied());
    let m = leaves.len();
    let mut candidates: Vec<LeafSet> = Vec::new();
    for mask in 1u32..(1 << (m - 1)) {
        let side_mask = (mask << 1) | 1;
        let side = leaf_set((0..m).filter(|i| side_mask >> i & 1 == 1).map(|i| leaves[i]));
        let s = Split::new(side, all, Rational::one());
        if !s.is_trivial() {
            candidates.push(s.a);
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Split> = Vec::new();
    fn rec(
        i: usize,
        cands: &[LeafSet],
        all: LeafSet,
        chosen: &mut Vec<Split>,
        leaves: &[u32],
        out: &mut Vec<MetricTree>,
    ) {
        if i == cands.len() {
            let splits: Vec<(LeafSet, Rational)> =
                chosen.iter().map(|s| (s.a, Rational::one())).collect();
            let pendant = leaves.iter().map(|&l| (l, Rational::one())).collect();
            out.push(MetricTree::from_splits(leaves, &splits, &pendant).expect("compatible"));
            return;
        }
        rec(i + 1, cands, all, chosen, leaves, out);
        let s = Split::new(cands[i], all, Rational::one());
        if chosen.iter().all(|c| c.compatible(&s)) {
            chosen.push(s);
            rec(i + 1, cands, all, chosen, leaves, out);
            chosen.pop();
        }
    }
    rec(0, &candidates, all, &mut chosen, &leaves, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn cat(s: &str) -> MetricTree {
        Caterpillar::parse(s).unwrap().to_tree().unwrap()
    }

    fn sides(t: &MetricTree) -> Vec<String> {
        t.splits().iter().map(|s| alloc::format!("{s}")).collect()
    }

    #[test]
    fn star_metric() {
        let t = MetricTree::star(&[1, 2, 3, 4], int(1)).unwrap();
        let d = t.tree_metric();
        for i in 1..=4 {
            for j in 1..=4 {
                let want = if i == j { int(0) } else { int(2) };
                assert_eq!(d.get(i, j), &want);
            }
        }
        assert!(t.splits().is_empty());
        assert_eq!(d.scale(&int(3)).get(1, 2), &int(6));
    }

    #[test]
    fn caterpillar_metric() {
        let t = cat("C(12,3,45)");
        let d = t.tree_metric();
        assert_eq!(d.get(1, 2), &int(2));
        assert_eq!(d.get(1, 3), &int(3));
        assert_eq!(d.get(1, 4), &int(4));
        assert_eq!(d.get(4, 5), &int(2));
        assert!(t.is_trivalent());
        assert_eq!(sides(&t), ["12|345", "123|45"]);
    }

    #[test]
    fn validation_rejects_bad_trees() {
        // degree-2 internal vertex
        let r = MetricTree::new(
            vec![Some(1), None, Some(2)],
            vec![(0, 1, int(1)), (1, 2, int(1))],
        );
        assert!(r.is_err());
        // negative length
        assert!(MetricTree::star(&[1, 2, 3], int(-1)).is_err());
        // duplicate label
        assert!(MetricTree::star(&[1, 1, 3], int(1)).is_err());
    }

    #[test]
    fn four_point_examples() {
        let d = Dissimilarity::from_fn(&[1, 2, 3, 4], |i, j| {
            if (i, j) == (1, 2) {
                int(10)
            } else {
                int(1)
            }
        });
        assert_eq!(d.four_point_violation(), Some([1, 2, 3, 4]));
        assert!(cat("C(12,3,45)").tree_metric().is_tree_metric());
    }

    #[test]
    fn reconstruct_star_and_degree_four() {
        let d = Dissimilarity::from_fn(&[1, 2, 3, 4], |_, _| int(2));
        let t = reconstruct_tree(&d).unwrap();
        assert!(t.labelled_isomorphic(&MetricTree::star(&[1, 2, 3, 4], int(1)).unwrap(), true));

        // a 6-leaf tree with a degree-4 vertex
        let leaves = [1, 2, 3, 4, 5, 6];
        let splits = [
            (leaf_set([1, 2]), frac(3, 2)),
            (leaf_set([5, 6]), int(2)),
        ];
        let pendant = leaves.iter().map(|&l| (l, frac(l as i64, 3))).collect();
        let t = MetricTree::from_splits(&leaves, &splits, &pendant).unwrap();
        assert!(!t.is_trivalent());
        let back = reconstruct_tree(&t.tree_metric()).unwrap();
        assert!(back.labelled_isomorphic(&t, true));
        assert!(!back.is_trivalent());
    }

    #[test]
    fn reconstruct_rejects_non_tree_metrics() {
        let d = Dissimilarity::from_fn(&[1, 2, 3, 4], |i, j| int((i * j) as i64 % 5));
        assert!(matches!(reconstruct_tree(&d), Err(Error::NotTreeMetric { .. })) || d.is_tree_metric());
        let bad = Dissimilarity::from_fn(&[1, 2, 3, 4], |i, j| if (i, j) == (1, 2) { int(10) } else { int(1) });
        assert_eq!(
            reconstruct_tree(&bad),
            Err(Error::NotTreeMetric { quartet: [1, 2, 3, 4] })
        );
    }

    #[test]
    fn whitehead_on_quartet() {
        let t = MetricTree::from_splits(
            &[1, 2, 3, 4],
            &[(leaf_set([1, 2]), int(1))],
            &BTreeMap::new(),
        )
        .unwrap();
        let e = t.find_edge(&leaf_set([1, 2])).unwrap();
        let a = t.whitehead_move(e, WhiteheadChoice::First).unwrap();
        let b = t.whitehead_move(e, WhiteheadChoice::Second).unwrap();
        assert_eq!(sides(&a), ["13|24"]);
        assert_eq!(sides(&b), ["14|23"]);
        assert!(t.is_whitehead_related(&a).unwrap());
        assert!(a.is_whitehead_related(&b).unwrap());
        assert!(!t.is_whitehead_related(&t).unwrap());
        assert_eq!(a.splits()[0].weight, int(1));
        // leaf edges cannot be moved
        let leaf_edge = (0..t.edges().len()).find(|&e| !t.is_internal_edge(e)).unwrap();
        assert!(t.whitehead_move(leaf_edge, WhiteheadChoice::First).is_err());
    }

    #[test]
    fn whitehead_between_fixture_caterpillars() {
        let a = cat("C(25,4,36)");
        let b = cat("C(25,6,34)");
        assert!(a.is_whitehead_related(&b).unwrap());
        let other = cat("C(15,3,46)");
        assert!(a.is_whitehead_related(&other).is_err());
    }

    #[test]
    fn cherries_and_delete() {
        assert_eq!(cat("C(25,4,36)").cherries(), [(2, 5), (3, 6)]);
        let star = MetricTree::star(&[1, 2, 3, 4], int(1)).unwrap();
        assert!(star.cherries().is_empty());
        let smaller = star.delete_leaf(4).unwrap();
        assert!(smaller.labelled_isomorphic(&MetricTree::star(&[1, 2, 3], int(1)).unwrap(), true));
        let q = cat("C(12,3,45)").delete_leaf(3).unwrap();
        assert_eq!(sides(&q), ["12|45"]);
        assert_eq!(q.splits()[0].weight, int(2));
        assert!(star.delete_leaf(9).is_err());
    }

    #[test]
    fn topology_counts() {
        assert_eq!(all_trivalent_topologies(&[1, 2, 3, 4, 5]).len(), 15);
        assert_eq!(all_trivalent_topologies(&[1, 2, 3, 4, 5, 6]).len(), 105);
        assert_eq!(all_topologies(&[1, 2, 3, 4, 5]).len(), 26);
    }

    #[test]
    fn caterpillar_roundtrip_display() {
        let c = Caterpillar::parse("C(25,4,36)").unwrap();
        assert_eq!(alloc::format!("{c}"), "C(25,4,36)");
        assert!(Caterpillar::parse("C(2,4,36)").is_err());
        assert!(Caterpillar::parse("X(25,4,36)").is_err());
    }
}
