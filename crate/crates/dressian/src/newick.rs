//! Newick text for leaf-labelled metric trees.
//!
//! Leaves carry positive integer labels, internal nodes are unlabelled and
//! branch lengths are exact rationals (`3`, `-1/2` is rejected as negative,
//! `5/4`). A missing length means 1, which is what topology-only inputs
//! want. A root of degree two is suppressed by merging its two edges.
//!
//! Output is canonical: the root is the internal vertex next to the
//! smallest leaf and children are ordered by their smallest leaf label.

use std::fmt::Write;

use dressian_core::rational::{self, Rational};
use dressian_core::MetricTree;

use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    labels: Vec<Option<u32>>,
    edges: Vec<(usize, usize, Rational)>,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::format(format!("newick: {msg} at byte {}", self.pos))
    }

    fn token(&mut self) -> &str {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && !b"(),:;".contains(&self.s[self.pos]) && !self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    fn length(&mut self) -> Result<Rational> {
        if self.peek() != Some(b':') {
            return Ok(rational::int(1));
        }
        self.pos += 1;
        let tok = self.token().to_owned();
        rational::parse(&tok).ok_or_else(|| self.err(&format!("bad branch length {tok:?}")))
    }

    /// Parses a subtree and returns its vertex.
    fn node(&mut self) -> Result<usize> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let v = self.labels.len();
            self.labels.push(None);
            loop {
                let child = self.node()?;
                let len = self.length()?;
                self.edges.push((v, child, len));
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
            // internal node names are ignored
            self.token();
            Ok(v)
        } else {
            let tok = self.token().to_owned();
            let label: u32 = tok
                .parse()
                .ok()
                .filter(|&l| l > 0)
                .ok_or_else(|| self.err(&format!("leaf label must be a positive integer, got {tok:?}")))?;
            let v = self.labels.len();
            self.labels.push(Some(label));
            Ok(v)
        }
    }
}

pub fn parse(text: &str) -> Result<MetricTree> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        labels: Vec::new(),
        edges: Vec::new(),
    };
    let root = p.node()?;
    if p.peek() == Some(b':') {
        p.length()?;
    }
    p.expect(b';')?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    let Parser { mut labels, mut edges, .. } = p;
    let at_root: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].0 == root).collect();
    if labels[root].is_none() && at_root.len() == 2 {
        let (_, a, la) = edges[at_root[0]].clone();
        let (_, b, lb) = edges[at_root[1]].clone();
        edges.retain(|e| e.0 != root);
        edges.push((a, b, la + lb));
        // drop the root vertex and shift indices above it
        labels.remove(root);
        for e in edges.iter_mut() {
            if e.0 > root {
                e.0 -= 1;
            }
            if e.1 > root {
                e.1 -= 1;
            }
        }
    }
    Ok(MetricTree::new(labels, edges)?)
}

pub fn emit(t: &MetricTree) -> String {
    let leaves = t.leaves();
    let Some(&first) = leaves.first() else {
        return ";".into();
    };
    let leaf = t.leaf_vertex(first).expect("leaf exists");
    let root = t.neighbors(leaf)[0].0;
    let mut out = String::new();
    if t.label(root).is_some() {
        // two leaves joined by one edge
        let len = &t.edges()[0].length;
        let _ = write!(out, "({}:{},{}:0);", first, len, t.label(root).expect("leaf"));
        return out;
    }
    write_node(t, root, usize::MAX, &mut out);
    out.push(';');
    out
}

fn min_leaf(t: &MetricTree, v: usize, parent: usize) -> u32 {
    if let Some(l) = t.label(v) {
        return l;
    }
    t.neighbors(v)
        .iter()
        .filter(|&&(y, _)| y != parent)
        .map(|&(y, _)| min_leaf(t, y, v))
        .min()
        .unwrap_or(u32::MAX)
}

fn write_node(t: &MetricTree, v: usize, parent: usize, out: &mut String) {
    if let Some(l) = t.label(v) {
        let _ = write!(out, "{l}");
        return;
    }
    let mut kids: Vec<(u32, usize, usize)> = t
        .neighbors(v)
        .iter()
        .filter(|&&(y, _)| y != parent)
        .map(|&(y, e)| (min_leaf(t, y, v), y, e))
        .collect();
    kids.sort();
    out.push('(');
    for (i, &(_, y, e)) in kids.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_node(t, y, v, out);
        let _ = write!(out, ":{}", t.edges()[e].length);
    }
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::*;
    use dressian_core::tree::Caterpillar;

    #[test]
    fn caterpillar_roundtrip() {
        let t = Caterpillar::parse("C(25,4,36)").unwrap().to_tree().unwrap();
        let s = emit(&t);
        assert_eq!(s, "(2:1,((3:1,6:1):1,4:1):1,5:1);");
        let back = parse(&s).unwrap();
        assert!(back.labelled_isomorphic(&t, true));
        assert_eq!(emit(&back), s);
    }

    #[test]
    fn illustrative_form_is_accepted() {
        let t = parse("((2:1,5:1):1,4:1,(3:1,6:1):1);").unwrap();
        let c = Caterpillar::parse("C(25,4,36)").unwrap().to_tree().unwrap();
        assert!(t.labelled_isomorphic(&c, true));
    }

    #[test]
    fn rational_lengths_are_exact() {
        let s = "(1:5/4,2:7/3,(3:1/2,4:0):3/8);";
        let t = parse(s).unwrap();
        assert_eq!(emit(&t), s);
    }

    #[test]
    fn rooted_binary_input_is_unrooted() {
        let t = parse("((1:1,2:1):1/2,(3:1,4:1):1/2);").unwrap();
        assert_eq!(emit(&t), "(1:1,2:1,(3:1,4:1):1);");
    }

    #[test]
    fn missing_lengths_default_to_one() {
        let t = parse("(1,2,(3,4));").unwrap();
        assert_eq!(emit(&t), "(1:1,2:1,(3:1,4:1):1);");
    }

    #[test]
    fn malformed_inputs() {
        for s in ["(1:1,2:1,3:1)", "(1:1,2:0.5,3:1);", "(a,2,3);", "(1,2,3);x", "(1:-1,2,3);", "(1,1,2);"] {
            assert!(parse(s).is_err(), "{s}");
        }
    }
}
