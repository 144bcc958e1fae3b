//! Compact edge subsets relative to an [`Instance`](crate::forest::Instance) edge list.

use std::fmt;

/// Maximum number of edges an instance may have.
pub const CAPACITY: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(u128);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn full(len: usize) -> Self {
        debug_assert!(len <= CAPACITY);
        if len == CAPACITY {
            EdgeSet(u128::MAX)
        } else {
            EdgeSet((1u128 << len) - 1)
        }
    }

    pub fn singleton(k: usize) -> Self {
        EdgeSet(1u128 << k)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn insert(&mut self, k: usize) {
        self.0 |= 1u128 << k;
    }

    pub fn remove(&mut self, k: usize) {
        self.0 &= !(1u128 << k);
    }

    pub fn with(self, k: usize) -> Self {
        EdgeSet(self.0 | 1u128 << k)
    }

    pub fn without(self, k: usize) -> Self {
        EdgeSet(self.0 & !(1u128 << k))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: EdgeSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(k)
        })
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = EdgeSet> {
        let full = self.0;
        let mut next = Some(0u128);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur | !full).wrapping_add(1) & full)
            };
            Some(EdgeSet(cur))
        })
    }
}

impl std::ops::BitAnd for EdgeSet {
    type Output = EdgeSet;
    fn bitand(self, rhs: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & rhs.0)
    }
}

impl std::ops::BitOr for EdgeSet {
    type Output = EdgeSet;
    fn bitor(self, rhs: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | rhs.0)
    }
}

impl std::ops::Sub for EdgeSet {
    type Output = EdgeSet;
    fn sub(self, rhs: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s = EdgeSet(0b1011_0000_0000_0000_0000_0000_0000_0000_0000_0001u128 << 90);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 1 << s.len());
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(EdgeSet::EMPTY.subsets().count(), 1);
        assert_eq!(EdgeSet::full(128).len(), 128);
    }

    #[test]
    fn iter_roundtrip() {
        let mut s = EdgeSet::EMPTY;
        for k in [0, 5, 64, 127] {
            s.insert(k);
        }
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 5, 64, 127]);
        assert_eq!(s.without(64).len(), 3);
        assert_eq!(s.first(), Some(0));
    }
}
