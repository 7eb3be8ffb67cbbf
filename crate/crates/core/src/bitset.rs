//! Fixed-width bitset used for semigroup membership tables and for the
//! below-conductor part of semimodules.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

/// A set of integers in `[0, len)`.
///
/// Ordering compares the sets as binary integers (bit `i` has weight `2^i`),
/// which is the canonical enumeration order for semimodules.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        let n = len.div_ceil(WORD);
        BitSet {
            len,
            words: SmallVec::from_elem(0, n),
        }
    }

    /// All of `[0, len)`.
    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_iter_bounded<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = Self::new(len);
        for i in items {
            if i < len {
                s.insert(i);
            }
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of members in `[lo, hi)`.
    pub fn count_range(&self, lo: usize, hi: usize) -> usize {
        (lo..hi.min(self.len)).filter(|&i| self.contains(i)).count()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * WORD + (WORD - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for i in other.iter() {
            if i < self.len {
                self.insert(i);
            }
        }
    }

    /// `{ i + k : i ∈ self }`, truncated to `[0, len)`.
    pub fn shifted_up(&self, k: usize) -> BitSet {
        BitSet::from_iter_bounded(self.len, self.iter().map(|i| i + k))
    }

    /// `{ i - k : i ∈ self, i ≥ k }`.
    pub fn shifted_down(&self, k: usize) -> BitSet {
        BitSet::from_iter_bounded(self.len, self.iter().filter(|&i| i >= k).map(|i| i - k))
    }

    /// Same members, different width. Members beyond the new width are dropped.
    pub fn resized(&self, len: usize) -> BitSet {
        BitSet::from_iter_bounded(len, self.iter())
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.words.len().max(other.words.len());
        for i in (0..n).rev() {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_sets() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        assert_eq!(s.count(), 3);
        assert_eq!(s.last(), Some(129));
        assert_eq!(s.shifted_up(1).to_vec(), vec![1, 65]);
        assert_eq!(s.shifted_down(64).to_vec(), vec![0, 65]);
        assert_eq!(BitSet::full(130).count(), 130);
    }

    #[test]
    fn integer_order() {
        let a = BitSet::from_iter_bounded(8, [0, 1, 2]); // 7
        let b = BitSet::from_iter_bounded(8, [3]); // 8
        let c = BitSet::from_iter_bounded(8, [0, 3]); // 9
        assert!(a < b && b < c);
    }
}
