//! Element subsets of a ground set of at most [`MAX_ELEMENTS`] elements,
//! stored as bitmasks.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Hard cap on ground-set size. Rank tables are `2^n` bytes.
pub const MAX_ELEMENTS: usize = 16;

/// A subset of `{0, .., n-1}`.
///
/// Ordering is canonical: by cardinality, then lexicographic on the sorted
/// element indices. For equicardinal sets (bases) this is plain
/// lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    /// The full set `{0, .., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        Subset(1 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut bits = 0u32;
        for e in elements {
            bits |= 1 << e;
        }
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, e: usize) -> bool {
        self.0 & (1 << e) != 0
    }

    pub const fn with(self, e: usize) -> Self {
        Subset(self.0 | (1 << e))
    }

    pub const fn without(self, e: usize) -> Self {
        Subset(self.0 & !(1 << e))
    }

    pub const fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub const fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub const fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement within a ground set of size `n`.
    pub const fn complement(self, n: usize) -> Self {
        Subset(!self.0 & Subset::full(n).0)
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Largest element index plus one (0 for the empty set).
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including `∅` and `self`, in increasing
    /// numeric order of their bitmasks.
    pub fn submasks(self) -> Submasks {
        Submasks { full: self.0, next: Some(0) }
    }

    /// Apply an element map `old -> new` to every member.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        Subset::from_elements(self.iter().map(f))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            Ordering::Equal
        } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elements(iter)
    }
}

/// Iterator over the members of a [`Subset`] in increasing order.
#[derive(Clone)]
pub struct Elements(u32);

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
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Iterator over all submasks of a mask.
pub struct Submasks {
    full: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.full { None } else { Some((cur.wrapping_sub(self.full)) & self.full) };
        Some(Subset(cur))
    }
}

/// A canonically ordered family of distinct subsets of one ground set.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct SubsetFamily(Vec<Subset>);

impl SubsetFamily {
    pub fn new() -> Self {
        SubsetFamily(Vec::new())
    }

    /// Sorts into canonical order and drops duplicates.
    pub fn from_vec(mut sets: Vec<Subset>) -> Self {
        sets.sort_unstable();
        sets.dedup();
        SubsetFamily(sets)
    }

    pub fn as_slice(&self) -> &[Subset] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Subset> {
        self.0.iter()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.0.binary_search(&s).is_ok()
    }

    pub fn position(&self, s: Subset) -> Option<usize> {
        self.0.binary_search(&s).ok()
    }

    /// The member containing `e`, when the family is a partition.
    pub fn class_of(&self, e: usize) -> Option<Subset> {
        self.0.iter().copied().find(|s| s.contains(e))
    }

    /// True when the members are nonempty, pairwise disjoint and cover
    /// `ground`.
    pub fn is_partition_of(&self, ground: Subset) -> bool {
        let mut seen = Subset::EMPTY;
        for &s in &self.0 {
            if s.is_empty() || !s.is_disjoint(seen) {
                return false;
            }
            seen = seen.union(s);
        }
        seen == ground
    }

    pub fn into_vec(self) -> Vec<Subset> {
        self.0
    }
}

impl<'a> IntoIterator for &'a SubsetFamily {
    type Item = &'a Subset;
    type IntoIter = core::slice::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Subset> for SubsetFamily {
    fn from_iter<I: IntoIterator<Item = Subset>>(iter: I) -> Self {
        SubsetFamily::from_vec(iter.into_iter().collect())
    }
}
