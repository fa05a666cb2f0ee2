//! Dense fixed-length bitset over `u64` words.
//!
//! Adjacency rows, candidate sets and covered-vertex masks all use this type;
//! it is deliberately minimal and keeps the word array accessible for the
//! set-intersection loops in the clique and factor searches.

/// A fixed-length set of `usize` values in `0..len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    /// Creates an empty set over the universe `0..len`.
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Creates a set containing every value in `0..len`.
    pub fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            *w = if lo + 64 <= len {
                u64::MAX
            } else if lo < len {
                (1u64 << (len - lo)) - 1
            } else {
                0
            };
        }
        s
    }

    /// Universe size (not the number of members).
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.len);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.len);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.len && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Number of members.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    /// `self &= other`. Both sets must share a universe.
    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// `self |= other`.
    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `self &= !other`.
    pub fn subtract(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Size of `self & other` without materializing it.
    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// True when `self & other` is empty.
    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// True when every member of `self` is in `other`.
    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Removes every value `<= v`.
    pub fn retain_above(&mut self, v: usize) {
        let word = (v + 1) / 64;
        let bit = (v + 1) % 64;
        for w in self.words.iter_mut().take(word) {
            *w = 0;
        }
        if word < self.words.len() && bit > 0 {
            self.words[word] &= !((1u64 << bit) - 1);
        }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Collects members into a sorted `Vec`.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for BitSet {
    /// Builds a set sized to fit the largest element (use `with_universe` style
    /// construction via `BitSet::new` + `insert` when the universe matters).
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let items: Vec<usize> = iter.into_iter().collect();
        let len = items.iter().max().map_or(0, |m| m + 1);
        let mut s = BitSet::new(len);
        for v in items {
            s.insert(v);
        }
        s
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over set members.
pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * 64 + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_remove() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1) && !s.contains(128));
        assert_eq!(s.count(), 3);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn full_and_clear() {
        let mut s = BitSet::full(70);
        assert_eq!(s.count(), 70);
        assert!(s.contains(69));
        assert!(!s.contains(70));
        s.clear();
        assert!(s.is_empty());
    }

    #[test]
    fn set_ops() {
        let mut a = BitSet::new(100);
        let mut b = BitSet::new(100);
        for v in [1, 5, 70, 99] {
            a.insert(v);
        }
        for v in [5, 70, 80] {
            b.insert(v);
        }
        assert_eq!(a.intersection_count(&b), 2);
        assert!(!a.is_disjoint(&b));
        let mut c = a.clone();
        c.intersect_with(&b);
        assert_eq!(c.to_vec(), vec![5, 70]);
        assert!(c.is_subset(&a) && c.is_subset(&b));
        let mut d = a.clone();
        d.subtract(&b);
        assert_eq!(d.to_vec(), vec![1, 99]);
        d.union_with(&b);
        assert_eq!(d.to_vec(), vec![1, 5, 70, 80, 99]);
    }

    #[test]
    fn retain_above_masks_low_values() {
        let mut s = BitSet::full(200);
        s.retain_above(63);
        assert_eq!(s.first(), Some(64));
        s.retain_above(64);
        assert_eq!(s.first(), Some(65));
        assert_eq!(s.count(), 135);
    }

    #[test]
    fn iter_ascending() {
        let s: BitSet = [7usize, 3, 120, 64].into_iter().collect();
        assert_eq!(s.to_vec(), vec![3, 7, 64, 120]);
        assert_eq!(s.first(), Some(3));
    }
}
