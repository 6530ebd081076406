//! Bitset subsets of a ground set `{0, …, n−1}` with `n ≤ 128`.

use std::fmt;

/// Hard cap on the ground-set size of any matroid.
pub const MAX_GROUND: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u128);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u128) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{0, …, n−1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            SubsetMask(u128::MAX)
        } else {
            SubsetMask((1u128 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        SubsetMask(1u128 << e)
    }

    /// `{lo, …, hi−1}`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo >= hi {
            return Self::EMPTY;
        }
        SubsetMask(Self::full(hi).0 & !Self::full(lo).0)
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_GROUND && (self.0 >> e) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1u128 << e;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1u128 << e);
    }

    pub fn with(self, e: usize) -> Self {
        SubsetMask(self.0 | (1u128 << e))
    }

    pub fn without(self, e: usize) -> Self {
        SubsetMask(self.0 & !(1u128 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside `{0, …, n−1}`.
    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    /// One past the largest element, or 0 for the empty set.
    pub fn span(self) -> usize {
        128 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut m = SubsetMask::EMPTY;
        for e in iter {
            m.insert(e);
        }
        m
    }
}

impl IntoIterator for SubsetMask {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

/// Ascending element iterator.
pub struct Elements(u128);

impl Iterator for Elements {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_ops() {
        let a: SubsetMask = [0, 3, 5].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(3) && !a.contains(4));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(a.complement(6), [1, 2, 4].into_iter().collect());
        assert_eq!(a.span(), 6);
        assert_eq!(SubsetMask::range(2, 5), [2, 3, 4].into_iter().collect());
        assert_eq!(SubsetMask::full(128).len(), 128);
        assert_eq!(format!("{a}"), "{0,3,5}");
    }
}
