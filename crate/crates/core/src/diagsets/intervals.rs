//! Sorted disjoint closed integer intervals.
//!
//! This is the shared representation behind [`DiagSet`](super::DiagSet) and
//! the δ/Δ index machinery. The normal form keeps intervals sorted, pairwise
//! non-overlapping, and non-adjacent (gap of at least 2), so membership and
//! set algebra stay logarithmic/linear in the number of *runs*, never in the
//! span of the values.

/// A set of integers stored as sorted, disjoint, non-adjacent closed
/// intervals `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalList {
    runs: Vec<(i64, i64)>,
}

impl IntervalList {
    pub fn empty() -> Self {
        IntervalList { runs: Vec::new() }
    }

    pub fn singleton(v: i64) -> Self {
        IntervalList { runs: vec![(v, v)] }
    }

    pub fn interval(lo: i64, hi: i64) -> Self {
        if lo > hi {
            IntervalList::empty()
        } else {
            IntervalList { runs: vec![(lo, hi)] }
        }
    }

    /// Build from arbitrary (possibly overlapping, unsorted) intervals.
    pub fn from_intervals<I: IntoIterator<Item = (i64, i64)>>(intervals: I) -> Self {
        let mut runs: Vec<(i64, i64)> = intervals.into_iter().filter(|(l, h)| l <= h).collect();
        runs.sort_unstable();
        Self::normalize_sorted(runs)
    }

    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Self {
        Self::from_intervals(values.into_iter().map(|v| (v, v)))
    }

    /// Merge a sorted interval vector into normal form.
    fn normalize_sorted(runs: Vec<(i64, i64)>) -> Self {
        let mut out: Vec<(i64, i64)> = Vec::with_capacity(runs.len());
        for (lo, hi) in runs {
            match out.last_mut() {
                // `prev_hi + 1 >= lo` means overlapping or adjacent: merge.
                Some((_, prev_hi)) if *prev_hi >= lo.saturating_sub(1) => {
                    if hi > *prev_hi {
                        *prev_hi = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        IntervalList { runs: out }
    }

    pub fn runs(&self) -> &[(i64, i64)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn num_runs(&self) -> usize {
        self.runs.len()
    }

    /// Number of integers in the set.
    pub fn cardinality(&self) -> usize {
        self.runs.iter().map(|(l, h)| (h - l + 1) as usize).sum()
    }

    pub fn min(&self) -> Option<i64> {
        self.runs.first().map(|&(l, _)| l)
    }

    pub fn max(&self) -> Option<i64> {
        self.runs.last().map(|&(_, h)| h)
    }

    /// Membership test, O(log #runs).
    pub fn contains(&self, v: i64) -> bool {
        let idx = self.runs.partition_point(|&(lo, _)| lo <= v);
        idx > 0 && self.runs[idx - 1].1 >= v
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.runs.iter().flat_map(|&(l, h)| l..=h)
    }

    pub fn union(&self, other: &IntervalList) -> IntervalList {
        let mut merged: Vec<(i64, i64)> = Vec::with_capacity(self.runs.len() + other.runs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.runs.len() || j < other.runs.len() {
            let take_left = j >= other.runs.len()
                || (i < self.runs.len() && self.runs[i] <= other.runs[j]);
            if take_left {
                merged.push(self.runs[i]);
                i += 1;
            } else {
                merged.push(other.runs[j]);
                j += 1;
            }
        }
        Self::normalize_sorted(merged)
    }

    pub fn intersect(&self, other: &IntervalList) -> IntervalList {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.runs.len() && j < other.runs.len() {
            let (al, ah) = self.runs[i];
            let (bl, bh) = other.runs[j];
            let lo = al.max(bl);
            let hi = ah.min(bh);
            if lo <= hi {
                out.push((lo, hi));
            }
            if ah < bh {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Intersection of normal forms is sorted and disjoint, but two pieces
        // can end up adjacent; re-normalize.
        Self::normalize_sorted(out)
    }

    /// Translate every element by `z`.
    pub fn shift(&self, z: i64) -> IntervalList {
        IntervalList { runs: self.runs.iter().map(|&(l, h)| (l + z, h + z)).collect() }
    }

    /// Reflect through zero: `{ -v : v in self }`.
    pub fn reflect(&self) -> IntervalList {
        let mut runs: Vec<(i64, i64)> = self.runs.iter().rev().map(|&(l, h)| (-h, -l)).collect();
        debug_assert!(runs.windows(2).all(|w| w[0].1 < w[1].0));
        runs.shrink_to_fit();
        IntervalList { runs }
    }

    /// Minkowski sum `{ a + b }`, computed run-pair-wise.
    pub fn minkowski(&self, other: &IntervalList) -> IntervalList {
        let mut sums = Vec::with_capacity(self.runs.len() * other.runs.len());
        for &(al, ah) in &self.runs {
            for &(bl, bh) in &other.runs {
                sums.push((al + bl, ah + bh));
            }
        }
        Self::from_intervals(sums)
    }

    /// Restrict to `[lo, hi]`.
    pub fn clip(&self, lo: i64, hi: i64) -> IntervalList {
        let mut out = Vec::new();
        for &(l, h) in &self.runs {
            let cl = l.max(lo);
            let ch = h.min(hi);
            if cl <= ch {
                out.push((cl, ch));
            }
        }
        IntervalList { runs: out }
    }

    /// Complement within `[lo, hi]`.
    pub fn complement_within(&self, lo: i64, hi: i64) -> IntervalList {
        let clipped = self.clip(lo, hi);
        let mut out = Vec::new();
        let mut cursor = lo;
        for &(l, h) in &clipped.runs {
            if cursor < l {
                out.push((cursor, l - 1));
            }
            cursor = h + 1;
        }
        if cursor <= hi {
            out.push((cursor, hi));
        }
        IntervalList { runs: out }
    }

    pub fn is_subset_of(&self, other: &IntervalList) -> bool {
        self.runs.iter().all(|&(l, h)| {
            let idx = other.runs.partition_point(|&(lo, _)| lo <= l);
            idx > 0 && other.runs[idx - 1].1 >= h
        })
    }

    /// Normal-form invariant: sorted, in-bounds pairs, gaps of at least 2.
    pub fn check_invariants(&self) -> bool {
        self.runs.iter().all(|&(l, h)| l <= h)
            && self.runs.windows(2).all(|w| w[0].1 + 1 < w[1].0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn as_set(list: &IntervalList) -> BTreeSet<i64> {
        list.iter().collect()
    }

    #[test]
    fn normalization_merges_overlaps_and_adjacent() {
        let l = IntervalList::from_intervals([(1, 3), (4, 6), (10, 12), (11, 15)]);
        assert_eq!(l.runs(), &[(1, 6), (10, 15)]);
        assert!(l.check_invariants());
    }

    #[test]
    fn complement_round_trip() {
        let l = IntervalList::from_intervals([(2, 3), (7, 7)]);
        let c = l.complement_within(1, 9);
        assert_eq!(c.runs(), &[(1, 1), (4, 6), (8, 9)]);
        assert_eq!(c.complement_within(1, 9).runs(), &[(2, 3), (7, 7)]);
    }

    fn arb_list() -> impl Strategy<Value = IntervalList> {
        prop::collection::vec((-40i64..40, 0i64..6), 0..8)
            .prop_map(|v| IntervalList::from_intervals(v.into_iter().map(|(l, w)| (l, l + w))))
    }

    proptest! {
        #[test]
        fn union_matches_element_wise(a in arb_list(), b in arb_list()) {
            let u = a.union(&b);
            prop_assert!(u.check_invariants());
            let expect: BTreeSet<i64> = as_set(&a).union(&as_set(&b)).cloned().collect();
            prop_assert_eq!(as_set(&u), expect);
        }

        #[test]
        fn intersect_matches_element_wise(a in arb_list(), b in arb_list()) {
            let i = a.intersect(&b);
            prop_assert!(i.check_invariants());
            let expect: BTreeSet<i64> = as_set(&a).intersection(&as_set(&b)).cloned().collect();
            prop_assert_eq!(as_set(&i), expect);
        }

        #[test]
        fn minkowski_matches_pair_enumeration(a in arb_list(), b in arb_list()) {
            let m = a.minkowski(&b);
            prop_assert!(m.check_invariants());
            let mut expect = BTreeSet::new();
            for x in a.iter() {
                for y in b.iter() {
                    expect.insert(x + y);
                }
            }
            prop_assert_eq!(as_set(&m), expect);
        }

        #[test]
        fn contains_agrees_with_iter(a in arb_list(), v in -90i64..90) {
            prop_assert_eq!(a.contains(v), as_set(&a).contains(&v));
        }
    }
}
