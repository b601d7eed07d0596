//! Fixed-width vertex subsets.
//!
//! Vertex `v` (1-indexed) occupies bit `v - 1` of a `u64`, so up to 63
//! vertices fit. Ordering is by raw bitmask value, which is the tie-break
//! order used throughout the crate.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{MacError, Result};

/// Largest supported vertex label.
pub const MAX_VERTICES: usize = 63;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices are supported");
        if n == 0 {
            VertexSet(0)
        } else {
            VertexSet(u64::MAX >> (64 - n))
        }
    }

    pub fn singleton(v: u32) -> Self {
        assert!((1..=MAX_VERTICES as u32).contains(&v), "vertex {v} out of range");
        VertexSet(1 << (v - 1))
    }

    /// Builds a set from 1-indexed labels, rejecting labels outside `1..=n`.
    pub fn from_vertices<I: IntoIterator<Item = u32>>(vertices: I, n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v as usize > n || v as usize > MAX_VERTICES {
                return Err(MacError::Input(format!("vertex {v} outside 1..={n}")));
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        (1..=64).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: u32) {
        *self = *self | VertexSet::singleton(v);
    }

    pub fn remove(&mut self, v: u32) {
        *self = *self - VertexSet::singleton(v);
    }

    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Largest vertex label, or 0 for the empty set.
    pub const fn max_vertex(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// Number of members strictly smaller than `v`.
    pub fn count_below(self, v: u32) -> usize {
        debug_assert!(v >= 1);
        (self.0 & ((1u64 << (v - 1)) - 1)).count_ones() as usize
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// All subsets of `self`, in decreasing bitmask order ending with ∅.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(self.0) }
    }

    /// Relabels `self ∩ within` to `1..=|within|`, preserving order.
    pub fn compress(self, within: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for (i, v) in within.iter().enumerate() {
            if self.contains(v) {
                out |= 1 << i;
            }
        }
        VertexSet(out)
    }

    /// Inverse of [`compress`](Self::compress): maps label `i` to the
    /// `i`-th smallest element of `within`.
    pub fn expand(self, within: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for (i, v) in within.iter().enumerate() {
            if self.0 & (1 << i) != 0 {
                out |= 1 << (v - 1);
            }
        }
        VertexSet(out)
    }

    /// Shifts every label up by `offset`.
    pub fn shift(self, offset: usize) -> VertexSet {
        assert!(self.max_vertex() as usize + offset <= MAX_VERTICES || self.is_empty());
        VertexSet(self.0 << offset)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Vertices {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;
    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == 0 { None } else { Some((cur - 1) & self.mask) };
        Some(VertexSet(cur))
    }
}

/// All `k`-subsets of `{1, …, n}` in increasing bitmask order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    assert!(n <= MAX_VERTICES);
    let limit = 1u64 << n;
    let first = if k == 0 {
        Some(0)
    } else if k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::successors(first, move |&x| {
        if x == 0 {
            return None;
        }
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x + c;
        let next = (((r ^ x) >> 2) / c) | r;
        (next < limit).then_some(next)
    })
    .map(VertexSet)
}
