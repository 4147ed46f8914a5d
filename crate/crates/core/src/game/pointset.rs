use std::fmt;

use crate::designs::PointId;

/// A set of points of a game with at most 32 points, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PointSet(pub u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn single(p: PointId) -> Self {
        PointSet(1 << p)
    }

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            PointSet(u32::MAX)
        } else {
            PointSet((1u32 << n) - 1)
        }
    }

    pub fn contains(self, p: PointId) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn with(self, p: PointId) -> Self {
        PointSet(self.0 | 1 << p)
    }

    pub fn insert(&mut self, p: PointId) {
        self.0 |= 1 << p;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: PointSet) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: PointSet) -> Self {
        PointSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<PointId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as PointId)
    }

    /// Members in increasing id order.
    pub fn iter(self) -> impl Iterator<Item = PointId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let p = bits.trailing_zeros() as PointId;
                bits &= bits - 1;
                p
            })
        })
    }

    /// Image under a point permutation given as `perm[p] = image of p`.
    pub fn map(self, perm: &[PointId]) -> Self {
        self.iter().fold(PointSet::EMPTY, |acc, p| acc.with(perm[p]))
    }
}

impl FromIterator<PointId> for PointSet {
    fn from_iter<I: IntoIterator<Item = PointId>>(iter: I) -> Self {
        iter.into_iter().fold(PointSet::EMPTY, PointSet::with)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn iter_round_trips(bits in any::<u32>()) {
            let s = PointSet(bits);
            let back: PointSet = s.iter().collect();
            prop_assert_eq!(back, s);
            prop_assert_eq!(s.iter().count(), s.len());
        }
    }

    #[test]
    fn basics() {
        let s: PointSet = [1, 4, 9].into_iter().collect();
        assert!(s.contains(4) && !s.contains(3));
        assert_eq!(s.first(), Some(1));
        assert_eq!(PointSet::full(16).len(), 16);
        assert_eq!(PointSet::full(32).len(), 32);
        assert!(PointSet::single(4).is_subset(s));
    }
}
