//! The δ/Δ submatrix-index machinery.
//!
//! For an entry `(i, j)` and degree `k`, the set δ collects every row/column
//! index a length-≤k product chain between `i` and `j` can pass through:
//!
//! ```text
//! δ(i,j,k) = ⋃_{p+q <= k} (i + S_p) ∩ (j - S_q)
//! ```
//!
//! δ is kept unclipped so that translation is exact (`δ(i+z, j+z) = δ(i,j)+z`);
//! the clipped version Δ = δ ∩ {1..n} is what extraction consumes.

use std::collections::HashMap;

use super::diagset::{s_sets, DiagSet};
use super::intervals::IntervalList;
use super::indexset::IndexSet;
use crate::error::{Error, Result};

/// An unclipped δ set together with its ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSet {
    n: usize,
    unclipped: IntervalList,
}

impl DeltaSet {
    pub(crate) fn assemble(n: usize, unclipped: IntervalList) -> DeltaSet {
        DeltaSet { n, unclipped }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Unclipped members (may extend beyond `1..=n`).
    pub fn unclipped_intervals(&self) -> &[(i64, i64)] {
        self.unclipped.runs()
    }

    /// The clipped index set Δ = δ ∩ {1..n}.
    pub fn clipped(&self) -> IndexSet {
        IndexSet::from_list(self.n, self.unclipped.clone())
    }

    /// Exact translate of δ; clipping happens when `clipped()` is read.
    pub fn shift(&self, z: i64) -> DeltaSet {
        DeltaSet { n: self.n, unclipped: self.unclipped.shift(z) }
    }

    pub fn union(&self, other: &DeltaSet) -> Result<DeltaSet> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(DeltaSet { n: self.n, unclipped: self.unclipped.union(&other.unclipped) })
    }
}

fn check_index(i: i64, n: usize) -> Result<()> {
    if i < 1 || i > n as i64 {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

/// δ for an anchor entry, computed purely on interval lists. `i` and `j` are
/// not range-checked here: translated anchors may sit outside `1..=n` and the
/// result is still meaningful (its clip may be empty).
pub(crate) fn delta_unchecked(s: &[DiagSet], i: i64, j: i64) -> IntervalList {
    let k = s.len() - 1;
    let mut acc = IntervalList::empty();
    for p in 0..=k {
        let left = s[p].as_list().shift(i);
        for q in 0..=(k - p) {
            let right = s[q].as_list().reflect().shift(j);
            acc = acc.union(&left.intersect(&right));
        }
    }
    acc
}

/// The δ/Δ pair for entry `(i, j)` and degree `k`.
pub fn delta_set(nd: &DiagSet, i: usize, j: usize, k: usize) -> Result<DeltaSet> {
    let n = nd.n();
    check_index(i as i64, n)?;
    check_index(j as i64, n)?;
    let s = s_sets(nd, k);
    Ok(DeltaSet { n, unclipped: delta_unchecked(&s, i as i64, j as i64) })
}

/// δ/Δ for a set of entries: the union of the per-entry sets.
///
/// Entries on a common diagonal are translates of each other, so one anchor δ
/// per distinct diagonal is computed and shifted (the translation law), rather
/// than recomputing per pair.
pub fn delta_union(nd: &DiagSet, pairs: &[(usize, usize)], k: usize) -> Result<DeltaSet> {
    let n = nd.n();
    for &(i, j) in pairs {
        check_index(i as i64, n)?;
        check_index(j as i64, n)?;
    }
    let s = s_sets(nd, k);
    let mut anchors: HashMap<i64, IntervalList> = HashMap::new();
    let mut acc = IntervalList::empty();
    for &(i, j) in pairs {
        let d = j as i64 - i as i64;
        let anchor = anchors
            .entry(d)
            .or_insert_with(|| delta_unchecked(&s, 1, 1 + d));
        acc = acc.union(&anchor.shift(i as i64 - 1));
    }
    Ok(DeltaSet { n, unclipped: acc })
}

/// δ for a contiguous row range on one diagonal:
/// `⋃_{i in [row_lo, row_hi]} δ(i, i+d)`.
///
/// Because translates of δ along a diagonal are exact shifts, the union over
/// a contiguous row range is the Minkowski sum of the anchor δ with the shift
/// interval, so the work is constant in the range length.
pub(crate) fn delta_row_range(
    s: &[DiagSet],
    d: i64,
    row_lo: i64,
    row_hi: i64,
) -> IntervalList {
    debug_assert!(row_lo <= row_hi);
    let anchor = delta_unchecked(s, 1, 1 + d);
    anchor.minkowski(&IntervalList::interval(row_lo - 1, row_hi - 1))
}

/// The interval estimate `(i + U_k) ∩ (j - U_k) ⊇ δ(i,j,k)` built from the
/// degree-k sparsity pattern. Cheaper than the exact union and still a valid
/// extraction set (any superset of Δ reproduces polynomial entries exactly).
pub fn delta_estimate(u: &DiagSet, i: i64, j: i64) -> IntervalList {
    u.as_list().shift(i).intersect(&u.as_list().reflect().shift(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Direct enumeration of the defining union, element by element.
    fn delta_brute(nd: &DiagSet, i: i64, j: i64, k: usize) -> BTreeSet<i64> {
        let s = s_sets(nd, k);
        let mut out = BTreeSet::new();
        for p in 0..=k {
            for q in 0..=(k - p) {
                let left: BTreeSet<i64> = s[p].iter().map(|r| i + r).collect();
                let right: BTreeSet<i64> = s[q].iter().map(|r| j - r).collect();
                out.extend(left.intersection(&right));
            }
        }
        out
    }

    #[test]
    fn banded_delta_matches_midpoint_formula() {
        // m-banded: Δ(i,j,k) = { t : |(i+j) - 2t| <= m k } ∩ {1..n}.
        let n = 9;
        let nd = DiagSet::banded(n, 1);
        let d = delta_set(&nd, 5, 5, 2).unwrap();
        let members: Vec<usize> = d.clipped().iter().collect();
        assert_eq!(members, vec![4, 5, 6]);

        for (m, k) in [(1usize, 3usize), (2, 2), (3, 1)] {
            let nd = DiagSet::banded(n, m);
            for i in 1..=n {
                for j in 1..=n {
                    let got: BTreeSet<i64> =
                        delta_set(&nd, i, j, k).unwrap().clipped().iter().map(|v| v as i64).collect();
                    if i.abs_diff(j) > m * k {
                        // no product chain of length <= k connects i and j
                        assert!(got.is_empty(), "m={m} k={k} i={i} j={j}");
                        continue;
                    }
                    let midpoint: BTreeSet<i64> = (1..=n as i64)
                        .filter(|&t| ((i + j) as i64 - 2 * t).unsigned_abs() as usize <= m * k)
                        .collect();
                    if m == 1 {
                        // single-step moves make the midpoint description exact
                        assert_eq!(got, midpoint, "m={m} k={k} i={i} j={j}");
                    } else {
                        assert!(got.is_subset(&midpoint), "m={m} k={k} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn matches_brute_force_enumeration() {
        let mut rng = crate::rng::SplitMix64::new(99);
        for _ in 0..25 {
            let n = 8 + rng.below(8);
            let vals: Vec<i64> =
                (0..4).map(|_| rng.below(2 * n - 1) as i64 - (n as i64 - 1)).collect();
            let nd = DiagSet::from_indices(n, vals);
            let i = 1 + rng.below(n);
            let j = 1 + rng.below(n);
            let k = rng.below(5);
            let got: BTreeSet<i64> = delta_set(&nd, i, j, k)
                .unwrap()
                .unclipped_intervals()
                .iter()
                .flat_map(|&(l, h)| l..=h)
                .collect();
            assert_eq!(got, delta_brute(&nd, i as i64, j as i64, k));
        }
    }

    #[test]
    fn diagonal_entry_contains_its_own_index() {
        let mut rng = crate::rng::SplitMix64::new(3);
        for _ in 0..20 {
            let n = 5 + rng.below(20);
            let vals: Vec<i64> =
                (0..3).map(|_| rng.below(2 * n - 1) as i64 - (n as i64 - 1)).collect();
            let nd = DiagSet::from_indices(n, vals);
            let i = 1 + rng.below(n);
            let d = delta_set(&nd, i, i, 4).unwrap();
            assert!(d.clipped().contains(i));
        }
    }

    #[test]
    fn shift_law_holds_exactly() {
        let nd = DiagSet::from_intervals(30, [(-7, -6), (0, 1), (4, 4)]);
        let base = delta_set(&nd, 3, 8, 3).unwrap();
        for z in [-2i64, 1, 5, 11] {
            let i2 = (3 + z) as usize;
            let j2 = (8 + z) as usize;
            let direct = delta_set(&nd, i2, j2, 3).unwrap();
            let shifted = base.shift(z);
            assert_eq!(direct.unclipped_intervals(), shifted.unclipped_intervals());
            assert_eq!(direct.clipped(), shifted.clipped());
        }
    }

    #[test]
    fn monotone_in_degree() {
        let nd = DiagSet::from_intervals(20, [(-4, -4), (0, 2)]);
        let mut prev = delta_set(&nd, 7, 9, 0).unwrap().clipped();
        for k in 1..6 {
            let cur = delta_set(&nd, 7, 9, k).unwrap().clipped();
            assert!(prev.is_subset_of(&cur), "k={k}");
            prev = cur;
        }
    }

    #[test]
    fn union_over_pairs_matches_per_pair_union() {
        let nd = DiagSet::from_intervals(24, [(-5, -5), (0, 1), (3, 3)]);
        let pairs: Vec<(usize, usize)> = (1..=24).map(|i| (i, i)).collect();
        let merged = delta_union(&nd, &pairs, 3).unwrap();
        let mut acc = delta_set(&nd, 1, 1, 3).unwrap();
        for &(i, j) in &pairs[1..] {
            acc = acc.union(&delta_set(&nd, i, j, 3).unwrap()).unwrap();
        }
        assert_eq!(merged, acc);
    }

    #[test]
    fn kron_laplacian_count_formula_for_even_k() {
        // ND = {-30, -1, 0, 1, 30}: #δ(1,1,k) = k²/2 + k + 1 for even k.
        let n = 900;
        let nd = DiagSet::from_indices(n, [-30, -1, 0, 1, 30]);
        for k in (2..=20).step_by(2) {
            let d = delta_set(&nd, 1, 1, k).unwrap();
            let count: usize =
                d.unclipped_intervals().iter().map(|&(l, h)| (h - l + 1) as usize).sum();
            assert_eq!(count, k * k / 2 + k + 1, "k={k}");
        }
    }

    #[test]
    fn empty_pair_set_gives_empty_index_set() {
        let nd = DiagSet::banded(10, 1);
        let d = delta_union(&nd, &[], 3).unwrap();
        assert!(d.clipped().is_empty());
    }

    #[test]
    fn estimate_contains_exact_delta() {
        let mut rng = crate::rng::SplitMix64::new(123);
        for _ in 0..20 {
            let n = 10 + rng.below(20);
            let vals: Vec<i64> =
                (0..4).map(|_| rng.below(2 * n - 1) as i64 - (n as i64 - 1)).collect();
            let nd = DiagSet::from_indices(n, vals);
            let k = 1 + rng.below(4);
            let u = super::super::diagset::u_set(&nd, k);
            let i = 1 + rng.below(n);
            let j = 1 + rng.below(n);
            let exact = delta_set(&nd, i, j, k).unwrap();
            let est = delta_estimate(&u, i as i64, j as i64);
            assert!(exact.unclipped.is_subset_of(&est));
        }
    }
}
