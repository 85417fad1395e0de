//! Subsets of the vertex set `[m]`, stored as bitmasks.
//!
//! Vertex labels are 1-based; label `v` occupies bit `v - 1`. The width is
//! 64, which bounds every complex in this crate to at most 64 vertices.

use std::cmp::Ordering;
use std::fmt;

/// Largest vertex label representable in a [`VertexSet`].
pub const MAX_VERTICES: usize = 64;

/// A subset of `{1, .., 64}`.
///
/// `Ord` is the lexicographic order of the ascending label sequences, so
/// `{1,2} < {1,2,3} < {1,3} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, .., m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES, "at most {MAX_VERTICES} vertices are supported");
        if m == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    /// Builds a set from 1-based labels. Panics on label 0 or labels above 64.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        labels.into_iter().fold(Self::EMPTY, |acc, v| {
            assert!((1..=MAX_VERTICES).contains(&v), "vertex label {v} out of range");
            acc.with(v)
        })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    #[must_use]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << (v - 1)))
    }

    #[must_use]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << (v - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest label in the set, or 0 for the empty set.
    pub fn max_label(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Number of elements strictly smaller than `v`.
    pub fn rank_of(self, v: usize) -> usize {
        let below = if v <= 1 { 0 } else { (1u64 << (v - 1)) - 1 };
        (self.0 & below).count_ones() as usize
    }

    /// Number of pairs `(a, b)` with `a` in `self`, `b` in `other` and `a > b`.
    ///
    /// This is the number of transpositions needed to sort the concatenation
    /// of the two ascending sequences, so `(-1)^inversions` is the shuffle sign.
    pub fn inversions(self, other: Self) -> usize {
        other.iter().map(|b| self.len() - self.rank_of(b + 1)).sum()
    }

    /// Ascending labels.
    pub fn iter(self) -> Labels {
        Labels(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets, in increasing order of bit pattern.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some(cur.wrapping_sub(mask) & mask) };
            Some(VertexSet(cur))
        })
    }

    /// Relabels the elements by adding `offset` to each label.
    pub fn shifted(self, offset: usize) -> Self {
        assert!(self.max_label() + offset <= MAX_VERTICES, "shifted vertex label out of range");
        VertexSet(self.0 << offset)
    }

    /// Order by cardinality, then lexicographically.
    pub fn cmp_size_lex(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let above = !(low | (low - 1));
        // The sequences agree below `low`; the one holding `low` is smaller
        // unless the other one has already ended.
        if self.0 & low != 0 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_labels(iter)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the labels of a [`VertexSet`].
#[derive(Clone)]
pub struct Labels(u64);

impl Iterator for Labels {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Labels {}

/// `(-1)^k` as an `i64`.
pub(crate) fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_labels(v.iter().copied())
    }

    #[test]
    fn lex_order_matches_vectors() {
        let mut sets = vec![set(&[2]), set(&[1, 3]), set(&[1, 2, 3]), set(&[1, 2]), set(&[])];
        sets.sort();
        assert_eq!(sets, vec![set(&[]), set(&[1, 2]), set(&[1, 2, 3]), set(&[1, 3]), set(&[2])]);
    }

    #[test]
    fn inversions_count_shuffle() {
        // (3,5 | 1,4): pairs 3>1, 5>1, 5>4
        assert_eq!(set(&[3, 5]).inversions(set(&[1, 4])), 3);
        assert_eq!(set(&[1, 2]).inversions(set(&[3])), 0);
    }

    #[test]
    fn subsets_enumerates_all() {
        let s = set(&[2, 4, 7]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    proptest! {
        #[test]
        fn ord_is_lexicographic(a in 0u64..4096, b in 0u64..4096) {
            let (x, y) = (VertexSet::from_bits(a), VertexSet::from_bits(b));
            prop_assert_eq!(x.cmp(&y), x.to_vec().cmp(&y.to_vec()));
        }

        #[test]
        fn inversions_brute_force(a in 0u64..1024, b in 0u64..1024) {
            let (x, y) = (VertexSet::from_bits(a), VertexSet::from_bits(b));
            let brute = x.iter().flat_map(|p| y.iter().map(move |q| (p, q))).filter(|(p, q)| p > q).count();
            prop_assert_eq!(x.inversions(y), brute);
        }
    }
}
