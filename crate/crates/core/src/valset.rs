//! Fixed-width bitsets over the valuation enumeration of a structure.

use std::fmt;

/// Largest valuation universe a [`ValuationSet`] can index.
pub const MAX_VALUATIONS: usize = 128;

/// A subset of a structure's valuations; bit `i` is valuation `v_i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuationSet(u128);

impl ValuationSet {
    pub const EMPTY: ValuationSet = ValuationSet(0);

    pub fn from_bits(bits: u128) -> Self {
        ValuationSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// The first `width` valuations.
    pub fn full(width: usize) -> Self {
        debug_assert!(width <= MAX_VALUATIONS);
        if width == MAX_VALUATIONS {
            ValuationSet(u128::MAX)
        } else {
            ValuationSet((1u128 << width) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ValuationSet(1u128 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        indices.into_iter().fold(Self::EMPTY, |acc, i| acc.with(i))
    }

    pub fn with(self, i: usize) -> Self {
        ValuationSet(self.0 | (1u128 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        ValuationSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ValuationSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ValuationSet(self.0 & !other.0)
    }

    pub fn complement(self, width: usize) -> Self {
        ValuationSet(!self.0 & Self::full(width).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = ValuationSet> {
        // Standard submask enumeration, descending, ending with the empty set.
        let mask = self.0;
        let mut next = Some(mask);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & mask) };
            Some(ValuationSet(cur))
        })
    }
}

impl fmt::Debug for ValuationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ValuationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for ValuationSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_complement() {
        assert_eq!(ValuationSet::full(4).len(), 4);
        assert_eq!(ValuationSet::full(128).len(), 128);
        let s = ValuationSet::from_indices([0, 2]);
        assert_eq!(s.complement(4), ValuationSet::from_indices([1, 3]));
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = ValuationSet::from_indices([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert!(subs.contains(&ValuationSet::EMPTY));
    }

    #[test]
    fn display_lists_indices() {
        assert_eq!(ValuationSet::from_indices([6, 7]).to_string(), "{6,7}");
        assert_eq!(ValuationSet::EMPTY.to_string(), "{}");
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(a in any::<u64>(), b in any::<u64>()) {
            use std::collections::BTreeSet;
            let (x, y) = (ValuationSet::from_bits(a as u128), ValuationSet::from_bits(b as u128));
            let xs: BTreeSet<usize> = x.iter().collect();
            let ys: BTreeSet<usize> = y.iter().collect();
            prop_assert_eq!(x.union(y).iter().collect::<BTreeSet<_>>(), &xs | &ys);
            prop_assert_eq!(x.intersection(y).iter().collect::<BTreeSet<_>>(), &xs & &ys);
            prop_assert_eq!(x.difference(y).iter().collect::<BTreeSet<_>>(), &xs - &ys);
            prop_assert_eq!(x.is_subset(y), xs.is_subset(&ys));
        }
    }
}
