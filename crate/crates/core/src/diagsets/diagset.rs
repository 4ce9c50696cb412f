//! Diagonal-index sets and their structure algebra.

use super::intervals::IntervalList;
use crate::error::{Error, Result};

/// A set of diagonal indices of an `n x n` matrix, stored as sorted disjoint
/// integer intervals within `[-(n-1), n-1]`.
///
/// Index `0` is the main diagonal, positive indices sit above it, negative
/// below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagSet {
    n: usize,
    set: IntervalList,
}

impl DiagSet {
    fn bound(n: usize) -> i64 {
        n as i64 - 1
    }

    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        DiagSet { n, set: IntervalList::empty() }
    }

    /// The set `{0}` (main diagonal only).
    pub fn main_diagonal(n: usize) -> Self {
        Self::from_intervals(n, [(0, 0)])
    }

    /// All diagonals `|r| <= m` that exist for dimension `n`.
    pub fn banded(n: usize, m: usize) -> Self {
        Self::from_intervals(n, [(-(m as i64), m as i64)])
    }

    /// Every diagonal of an `n x n` matrix.
    pub fn full(n: usize) -> Self {
        Self::from_intervals(n, [(-Self::bound(n), Self::bound(n))])
    }

    /// Build from intervals; out-of-range parts are clipped away.
    pub fn from_intervals<I: IntoIterator<Item = (i64, i64)>>(n: usize, intervals: I) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let b = Self::bound(n);
        let set = IntervalList::from_intervals(intervals).clip(-b, b);
        DiagSet { n, set }
    }

    pub fn from_indices<I: IntoIterator<Item = i64>>(n: usize, indices: I) -> Self {
        Self::from_intervals(n, indices.into_iter().map(|v| (v, v)))
    }

    pub(crate) fn from_list(n: usize, list: IntervalList) -> Self {
        let b = Self::bound(n);
        DiagSet { n, set: list.clip(-b, b) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        self.set.runs()
    }

    pub(crate) fn as_list(&self) -> &IntervalList {
        &self.set
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn cardinality(&self) -> usize {
        self.set.cardinality()
    }

    pub fn contains(&self, r: i64) -> bool {
        self.set.contains(r)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.set.iter()
    }

    pub fn is_subset_of(&self, other: &DiagSet) -> bool {
        self.set.is_subset_of(&other.set)
    }

    pub fn union(&self, other: &DiagSet) -> Result<DiagSet> {
        self.check_dim(other)?;
        Ok(DiagSet { n: self.n, set: self.set.union(&other.set) })
    }

    fn check_dim(&self, other: &DiagSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// Verify the representation invariant (used by tests and debug builds).
    pub fn check_invariants(&self) -> bool {
        let b = Self::bound(self.n);
        self.set.check_invariants()
            && self.set.min().is_none_or(|lo| lo >= -b)
            && self.set.max().is_none_or(|hi| hi <= b)
    }
}

/// Minkowski sum of two diagonal sets, clipped to the valid diagonal range.
///
/// Interval pairs sum as `[l1+l2, h1+h2]` and the result is re-normalized, so
/// the cost is quadratic in the number of runs, not in `n`.
pub fn minkowski_sum(a: &DiagSet, b: &DiagSet) -> Result<DiagSet> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: b.n() });
    }
    let summed = a.set.minkowski(&b.set);
    let out = DiagSet::from_list(a.n, summed);
    debug_assert!(out.check_invariants());
    Ok(out)
}

/// The structure sets of all matrix powers up to `k`.
///
/// `result[0] = {0}` and `result[p]` is the p-fold Minkowski sum of `nd`,
/// a structural superset of the nonzero diagonals of the p-th matrix power.
pub fn s_sets(nd: &DiagSet, k: usize) -> Vec<DiagSet> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(DiagSet::main_diagonal(nd.n()));
    for p in 1..=k {
        let prev = &out[p - 1];
        // Dimensions match by construction.
        out.push(minkowski_sum(prev, nd).expect("dimensions match"));
    }
    out
}

/// Union of the structure sets of all powers `0..=k`: the structural sparsity
/// pattern of any polynomial of degree at most `k`.
pub fn u_set(nd: &DiagSet, k: usize) -> DiagSet {
    let mut acc = IntervalList::singleton(0);
    let mut power = IntervalList::singleton(0);
    for _ in 1..=k {
        power = power.minkowski(nd.as_list());
        let b = DiagSet::bound(nd.n());
        power = power.clip(-b, b);
        acc = acc.union(&power);
    }
    let out = DiagSet::from_list(nd.n(), acc);
    debug_assert!(out.check_invariants());
    out
}
