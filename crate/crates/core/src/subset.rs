//! `k`-subsets of `[n] = {1, ..., n}` and their lex indexing.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest ground set size supported by the bit representation.
pub const MAX_N: u32 = 63;

/// A set of labels from `[n]`, stored as a bit mask (bit `i - 1` is label `i`).
///
/// Equality, hashing and ordering only look at the elements. The order is
/// lexicographic on the sorted element lists.
#[derive(Clone, Copy)]
pub struct KSubset {
    bits: u64,
    n: u32,
}

impl KSubset {
    pub fn new(elements: &[u32], n: u32) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::param(alloc::format!("n = {n} exceeds {MAX_N}")));
        }
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::param(alloc::format!("element {e} outside [1, {n}]")));
            }
            if bits & (1 << (e - 1)) != 0 {
                return Err(Error::param(alloc::format!("repeated element {e}")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(KSubset { bits, n })
    }

    pub fn from_bits(bits: u64, n: u32) -> Self {
        debug_assert!(n <= MAX_N && bits >> n == 0);
        KSubset { bits, n }
    }

    pub fn empty(n: u32) -> Self {
        KSubset { bits: 0, n }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, e: u32) -> bool {
        (1..=64).contains(&e) && self.bits >> (e - 1) & 1 == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + Clone {
        let mut b = self.bits;
        core::iter::from_fn(move || {
            if b == 0 {
                return None;
            }
            let e = b.trailing_zeros() + 1;
            b &= b - 1;
            Some(e)
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.elements().collect()
    }

    pub fn with(&self, e: u32) -> Self {
        KSubset {
            bits: self.bits | 1 << (e - 1),
            n: self.n,
        }
    }

    pub fn without(&self, e: u32) -> Self {
        KSubset {
            bits: self.bits & !(1 << (e - 1)),
            n: self.n,
        }
    }

    pub fn union(&self, other: &KSubset) -> Self {
        KSubset {
            bits: self.bits | other.bits,
            n: self.n.max(other.n),
        }
    }

    pub fn is_disjoint(&self, other: &KSubset) -> bool {
        self.bits & other.bits == 0
    }

    /// Incidence vector in `{0,1}^n`.
    pub fn incidence(&self) -> Vec<u8> {
        (1..=self.n).map(|i| self.contains(i) as u8).collect()
    }

    /// Applies a relabelling `i -> perm[i - 1]`.
    pub fn permute(&self, perm: &[u32]) -> Self {
        let mut bits = 0u64;
        for e in self.elements() {
            bits |= 1 << (perm[e as usize - 1] - 1);
        }
        KSubset { bits, n: self.n }
    }
}

impl PartialEq for KSubset {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for KSubset {}

impl core::hash::Hash for KSubset {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        // Everything below `low` is shared; whoever holds `low` has the smaller
        // next element unless the other list has already run out.
        let above = !(low | (low - 1));
        if self.bits & low != 0 {
            if other.bits & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.bits & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return f.write_str("{}");
        }
        let wide = self.elements().any(|e| e > 9);
        let mut first = true;
        for e in self.elements() {
            if wide && !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KSubset({self})")
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn check_kn(k: u32, n: u32) -> Result<()> {
    if k == 0 || k > n || n > MAX_N {
        return Err(Error::param(alloc::format!(
            "need 0 < k <= n <= {MAX_N}, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn enumerate_ksubsets(k: u32, n: u32) -> Result<Vec<KSubset>> {
    check_kn(k, n)?;
    let ground: Vec<u32> = (1..=n).collect();
    Ok(subsets_of(&ground, k as usize, n))
}

/// All `size`-subsets of a sorted label list in lex order. `size = 0` gives
/// the single empty set.
pub fn subsets_of(ground: &[u32], size: usize, n: u32) -> Vec<KSubset> {
    let m = ground.len();
    let mut out = Vec::new();
    if size > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let mut bits = 0u64;
        for &i in &idx {
            bits |= 1 << (ground[i] - 1);
        }
        out.push(KSubset { bits, n });
        let mut i = size;
        while i > 0 && idx[i - 1] == i - 1 + m - size {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Position of a `k`-subset in [`enumerate_ksubsets`]`(k, n)`.
pub fn lex_rank(s: &KSubset, n: u32) -> usize {
    let k = s.k() as u64;
    let mut rank = 0u64;
    let mut prev = 0u32;
    for (i, c) in s.elements().enumerate() {
        for j in prev + 1..c {
            rank += binomial((n - j) as u64, k - i as u64 - 1);
        }
        prev = c;
    }
    rank as usize
}
