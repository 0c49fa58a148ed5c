//! Fixed-width subsets of a ground set `[n]`, packed 64 elements per word.
//!
//! Element `e` (1-based) lives in bit `(e - 1) % 64` of word `(e - 1) / 64`.
//! All sets that are compared or combined must share the same width.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Largest ground set a [`BitSet`] may describe.
pub const MAX_GROUND: usize = 4096;

type Words = SmallVec<[u64; 2]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    n: usize,
    words: Words,
}

#[inline]
fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl BitSet {
    /// The empty subset of `[n]`.
    pub fn empty(n: usize) -> Self {
        BitSet {
            n,
            words: SmallVec::from_elem(0, word_count(n)),
        }
    }

    /// The full set `[n]`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    /// `{from, from + 1, ..., to}` inside `[n]` (1-based, inclusive). Empty when `from > to`.
    pub fn range(n: usize, from: usize, to: usize) -> Self {
        let mut s = Self::empty(n);
        for e in from..=to {
            s.insert(e);
        }
        s
    }

    /// Builds a set from 1-based elements; returns the offending element if it is outside `[n]`.
    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elems: I) -> Result<Self, usize> {
        let mut s = Self::empty(n);
        for e in elems {
            if e == 0 || e > n {
                return Err(e);
            }
            s.insert(e);
        }
        Ok(s)
    }

    /// Builds a set from the low `n` bits of `mask` (bit 0 is element 1). Requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        let mut s = Self::empty(n);
        if n > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// Low word of the set; the whole set when `n <= 64`.
    pub fn low_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        debug_assert!(e >= 1 && e <= self.n);
        let b = e - 1;
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        assert!(e >= 1 && e <= self.n, "element {e} outside [{}]", self.n);
        let b = e - 1;
        self.words[b / 64] |= 1 << (b % 64);
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        assert!(e >= 1 && e <= self.n, "element {e} outside [{}]", self.n);
        let b = e - 1;
        self.words[b / 64] &= !(1 << (b % 64));
    }

    /// Cardinality.
    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `|self ∩ other|` without allocating.
    #[inline]
    pub fn intersection_len(&self, other: &BitSet) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
    }

    pub fn xor_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= *b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// `[n] ∖ self`.
    pub fn complement(&self) -> BitSet {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// Re-embeds the set into `[new_n]`, translating every element by `offset` (`A + offset`).
    pub fn shifted(&self, offset: usize, new_n: usize) -> BitSet {
        let mut s = BitSet::empty(new_n);
        for e in self.elements() {
            s.insert(e + offset);
        }
        s
    }

    /// Same elements inside a larger ground set.
    pub fn widened(&self, new_n: usize) -> BitSet {
        assert!(new_n >= self.n);
        let mut s = BitSet::empty(new_n);
        s.words[..self.words.len()].copy_from_slice(&self.words);
        s
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize + 1)
    }

    /// Elements in increasing order (1-based).
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    /// Bitstring of length `n`, element 1 first.
    pub fn to_bitstring(&self) -> String {
        (1..=self.n)
            .map(|e| if self.contains(e) { '1' } else { '0' })
            .collect()
    }

    fn trim(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

pub struct Elements<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Elements<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + tz + 1);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Canonical order: by cardinality, then lexicographically by the sorted element lists
/// (so `{1,2} < {1,3} < {2,3}`).
impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            for (a, b) in self.words.iter().zip(other.words.iter()) {
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff & diff.wrapping_neg();
                    // whoever owns the lowest differing element sorts first
                    return if a & low != 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            self.n.cmp(&other.n)
        })
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}
