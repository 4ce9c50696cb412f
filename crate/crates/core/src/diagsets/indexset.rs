//! 1-based row/column index sets with an order (rank) function.

use super::intervals::IntervalList;
use crate::error::{Error, Result};

/// A sorted subset of `{1..n}`.
///
/// The order function maps a member to its 1-based rank within the set; it is
/// the bridge between global matrix indices and positions in an extracted
/// submatrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    n: usize,
    set: IntervalList,
    /// cum[i] = number of elements in runs 0..i (exclusive prefix counts).
    cum: Vec<usize>,
}

impl IndexSet {
    pub(crate) fn from_list(n: usize, list: IntervalList) -> Self {
        let set = list.clip(1, n as i64);
        let mut cum = Vec::with_capacity(set.num_runs() + 1);
        let mut total = 0usize;
        cum.push(0);
        for &(l, h) in set.runs() {
            total += (h - l + 1) as usize;
            cum.push(total);
        }
        IndexSet { n, set, cum }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_list(n, IntervalList::empty())
    }

    pub fn from_intervals<I: IntoIterator<Item = (i64, i64)>>(n: usize, intervals: I) -> Self {
        Self::from_list(n, IntervalList::from_intervals(intervals))
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        Self::from_list(n, IntervalList::from_values(members.into_iter().map(|v| v as i64)))
    }

    /// The full set `{1..n}`.
    pub fn all(n: usize) -> Self {
        Self::from_list(n, IntervalList::interval(1, n as i64))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cardinality(&self) -> usize {
        *self.cum.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality() == 0
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        self.set.runs()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(i as i64)
    }

    /// Iterate members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter().map(|v| v as usize)
    }

    /// The order function: 1-based rank of member `i` within the set.
    pub fn rank(&self, i: usize) -> Result<usize> {
        let v = i as i64;
        let idx = self.set.runs().partition_point(|&(lo, _)| lo <= v);
        if idx == 0 || self.set.runs()[idx - 1].1 < v {
            return Err(Error::IndexOutOfRange { index: v, n: self.n });
        }
        let (lo, _) = self.set.runs()[idx - 1];
        Ok(self.cum[idx - 1] + (v - lo) as usize + 1)
    }

    /// 0-based position of member `i`: `rank(i) - 1`. Convenient for reading
    /// extracted dense submatrices.
    pub fn pos(&self, i: usize) -> Result<usize> {
        Ok(self.rank(i)? - 1)
    }

    /// Member at the given 1-based rank.
    pub fn member_at(&self, rank: usize) -> Option<usize> {
        if rank == 0 || rank > self.cardinality() {
            return None;
        }
        let idx = self.cum.partition_point(|&c| c < rank) - 1;
        let (lo, _) = self.set.runs()[idx];
        Some((lo as usize) + (rank - 1 - self.cum[idx]))
    }

    pub fn union(&self, other: &IndexSet) -> Result<IndexSet> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(Self::from_list(self.n, self.set.union(&other.set)))
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.set.is_subset_of(&other.set)
    }
}
