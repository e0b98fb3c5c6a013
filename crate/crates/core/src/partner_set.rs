//! Bitmask sets of agents from one side of the market.

use std::fmt;

/// Maximum number of agents on either side of a market.
pub const MAX_SIDE: usize = 64;

/// A subset of one side's agents, stored as a 64-bit mask over agent indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PartnerSet(u64);

impl PartnerSet {
    pub const EMPTY: PartnerSet = PartnerSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        PartnerSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        debug_assert!(index < MAX_SIDE);
        PartnerSet(1 << index)
    }

    /// The set `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_SIDE);
        if n == MAX_SIDE {
            PartnerSet(u64::MAX)
        } else {
            PartnerSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(PartnerSet::EMPTY, |s, i| s.with(i))
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_SIDE && self.0 >> index & 1 == 1
    }

    #[must_use]
    pub fn with(self, index: usize) -> Self {
        self | PartnerSet::singleton(index)
    }

    #[must_use]
    pub fn without(self, index: usize) -> Self {
        if index < MAX_SIDE {
            PartnerSet(self.0 & !(1 << index))
        } else {
            self
        }
    }

    pub const fn is_subset(self, other: PartnerSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: PartnerSet) -> bool {
        self.0 & other.0 == 0
    }

    #[must_use]
    pub const fn union(self, other: PartnerSet) -> Self {
        PartnerSet(self.0 | other.0)
    }

    #[must_use]
    pub const fn intersection(self, other: PartnerSet) -> Self {
        PartnerSet(self.0 & other.0)
    }

    #[must_use]
    pub const fn difference(self, other: PartnerSet) -> Self {
        PartnerSet(self.0 & !other.0)
    }

    /// Highest index plus one, or 0 for the empty set.
    pub const fn width(self) -> usize {
        (u64::BITS - self.0.leading_zeros()) as usize
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl std::ops::BitOr for PartnerSet {
    type Output = PartnerSet;
    fn bitor(self, rhs: PartnerSet) -> PartnerSet {
        self.union(rhs)
    }
}

impl std::ops::BitOrAssign for PartnerSet {
    fn bitor_assign(&mut self, rhs: PartnerSet) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for PartnerSet {
    type Output = PartnerSet;
    fn bitand(self, rhs: PartnerSet) -> PartnerSet {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for PartnerSet {
    type Output = PartnerSet;
    fn sub(self, rhs: PartnerSet) -> PartnerSet {
        self.difference(rhs)
    }
}

impl FromIterator<usize> for PartnerSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        PartnerSet::from_indices(iter)
    }
}

impl IntoIterator for PartnerSet {
    type Item = usize;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl fmt::Debug for PartnerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Debug)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Subsets of a mask in increasing numeric order (standard `(s - mask) & mask` walk).
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = PartnerSet;

    fn next(&mut self) -> Option<PartnerSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(PartnerSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = PartnerSet::from_indices([0, 2, 5]);
        let b = PartnerSet::from_indices([2, 3]);
        assert_eq!((a | b).iter().collect::<Vec<_>>(), vec![0, 2, 3, 5]);
        assert_eq!((a & b).iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!((a - b).iter().collect::<Vec<_>>(), vec![0, 5]);
        assert!(PartnerSet::from_indices([2]).is_subset(a));
        assert!(!b.is_subset(a));
        assert_eq!(a.len(), 3);
        assert_eq!(a.width(), 6);
        assert!(a.contains(5) && !a.contains(4) && !a.contains(200));
        assert_eq!(a.without(0).with(1), PartnerSet::from_indices([1, 2, 5]));
    }

    #[test]
    fn full_sets() {
        assert_eq!(PartnerSet::full(0), PartnerSet::EMPTY);
        assert_eq!(PartnerSet::full(3).bits(), 0b111);
        assert_eq!(PartnerSet::full(64).len(), 64);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = PartnerSet::from_indices([1, 4, 6]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        let mut dedup = subs.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
        assert_eq!(PartnerSet::EMPTY.subsets().count(), 1);
    }
}
