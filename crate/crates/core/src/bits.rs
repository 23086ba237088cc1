//! Bit rows used for adjacency and vertex subsets.
//!
//! Graphs with at most 64 vertices keep one `u64` per adjacency row; larger
//! graphs fall back to [`WideRow`]. Algorithms that care about throughput are
//! written once against [`BitRow`] and monomorphised for both.

use std::fmt;

/// Operations shared by the fixed-width and the wide bit row.
pub(crate) trait BitRow: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn empty(n: usize) -> Self;
    fn insert(&mut self, i: usize);
    fn remove(&mut self, i: usize);
    fn contains(&self, i: usize) -> bool;
    fn and(&self, other: &Self) -> Self;
    fn or(&self, other: &Self) -> Self;
    fn and_not(&self, other: &Self) -> Self;
    fn is_empty(&self) -> bool;
    fn count(&self) -> usize;
    /// Smallest member, if any.
    fn first(&self) -> Option<usize>;
    /// Members strictly greater than `i`.
    fn above(&self, i: usize) -> Self;
    fn intersects(&self, other: &Self) -> bool {
        !self.and(other).is_empty()
    }
    fn ones(&self) -> Ones<'_, Self> {
        Ones { row: self, next: 0 }
    }
    /// Smallest member `>= from`.
    fn next_from(&self, from: usize) -> Option<usize>;
}

pub(crate) struct Ones<'a, B> {
    row: &'a B,
    next: usize,
}

impl<B: BitRow> Iterator for Ones<'_, B> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        let i = self.row.next_from(self.next)?;
        self.next = i + 1;
        Some(i)
    }
}

impl BitRow for u64 {
    #[inline]
    fn empty(_n: usize) -> Self {
        0
    }
    #[inline]
    fn insert(&mut self, i: usize) {
        *self |= 1 << i;
    }
    #[inline]
    fn remove(&mut self, i: usize) {
        *self &= !(1 << i);
    }
    #[inline]
    fn contains(&self, i: usize) -> bool {
        i < 64 && self >> i & 1 == 1
    }
    #[inline]
    fn and(&self, other: &Self) -> Self {
        self & other
    }
    #[inline]
    fn or(&self, other: &Self) -> Self {
        self | other
    }
    #[inline]
    fn and_not(&self, other: &Self) -> Self {
        self & !other
    }
    #[inline]
    fn is_empty(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn count(&self) -> usize {
        self.count_ones() as usize
    }
    #[inline]
    fn first(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
    #[inline]
    fn above(&self, i: usize) -> Self {
        if i >= 63 {
            0
        } else {
            self & (!0u64 << (i + 1))
        }
    }
    #[inline]
    fn next_from(&self, from: usize) -> Option<usize> {
        if from >= 64 {
            return None;
        }
        (self >> from).first().map(|k| k + from)
    }
}

/// Dynamically sized bit row for graphs above 64 vertices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WideRow {
    words: Vec<u64>,
}

impl fmt::Debug for WideRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

impl WideRow {
    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        WideRow {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        }
    }
}

impl BitRow for WideRow {
    fn empty(n: usize) -> Self {
        WideRow {
            words: vec![0; n.div_ceil(64).max(1)],
        }
    }
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }
    fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }
    fn and(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }
    fn or(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }
    fn and_not(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }
    fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }
    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn first(&self) -> Option<usize> {
        self.next_from(0)
    }
    fn above(&self, i: usize) -> Self {
        let mut out = self.clone();
        let full = (i + 1) / 64;
        for w in out.words.iter_mut().take(full) {
            *w = 0;
        }
        if let Some(w) = out.words.get_mut(full) {
            *w &= !0u64 << ((i + 1) % 64);
        }
        out
    }
    fn next_from(&self, from: usize) -> Option<usize> {
        let mut wi = from / 64;
        let mut word = *self.words.get(wi)? & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                return Some(wi * 64 + word.trailing_zeros() as usize);
            }
            wi += 1;
            word = *self.words.get(wi)?;
        }
    }
}

/// A subset of the vertices of one particular graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    row: WideRow,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            row: WideRow::empty(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        (0..universe).fold(Self::empty(universe), |mut s, v| {
            s.insert(v);
            s
        })
    }

    pub fn from_indices(universe: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for v in members {
            s.insert(v);
        }
        s
    }

    /// Size of the vertex set this subset lives in.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        self.row.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.row.remove(v);
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.row.contains(v)
    }

    pub fn len(&self) -> usize {
        self.row.count()
    }

    pub fn is_empty(&self) -> bool {
        self.row.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.row.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            universe: self.universe,
            row: self.row.and_not(&other.row),
        }
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.universe).difference(self)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.row.and_not(&other.row).is_empty()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
