//! Tilings of the degree-k sparsity pattern.
//!
//! The full-matrix engine evaluates one dense kernel per tile, so tiles must
//! cover the pattern exactly and pairwise disjointly. Tiles are rectangles in
//! (row, diagonal) coordinates: a contiguous row band crossed with one
//! contiguous run of diagonals. Tiles of the same run at different row bands
//! are translates of each other, which lets Δ computations share anchors.

use super::diagset::{s_sets, u_set, DiagSet};
use super::delta::{delta_row_range, DeltaSet};
use crate::error::{Error, Result};

/// A rectangular tile in (row, diagonal) coordinates: the entry set
/// `{ (i, i+d) : row_lo <= i <= row_hi, d_lo <= d <= d_hi, 1 <= i+d <= n }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairBlock {
    pub row_lo: usize,
    pub row_hi: usize,
    pub d_lo: i64,
    pub d_hi: i64,
}

impl PairBlock {
    /// Iterate the (row, col) pairs of the tile that fall inside the matrix.
    pub fn pairs(&self, n: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nn = n as i64;
        (self.row_lo..=self.row_hi).flat_map(move |i| {
            let lo = (self.d_lo + i as i64).max(1);
            let hi = (self.d_hi + i as i64).min(nn);
            (lo..=hi).map(move |j| (i, j as usize))
        })
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        let d = j as i64 - i as i64;
        i >= self.row_lo && i <= self.row_hi && d >= self.d_lo && d <= self.d_hi
    }
}

/// A validated tiling of the degree-k pattern of `nd`.
#[derive(Debug, Clone)]
pub struct Partition {
    n: usize,
    k: usize,
    tiles: Vec<PairBlock>,
}

impl Partition {
    pub fn new(nd: &DiagSet, k: usize, tiles: Vec<PairBlock>) -> Result<Partition> {
        let p = Partition { n: nd.n(), k, tiles };
        p.validate(nd)?;
        Ok(p)
    }

    pub fn tiles(&self) -> &[PairBlock] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Check the cover/disjointness conditions against the pattern of `nd`:
    /// every pattern entry in exactly one tile, no tile entry off-pattern
    /// rows. Works per diagonal with interval arithmetic.
    fn validate(&self, nd: &DiagSet) -> Result<()> {
        let u = u_set(nd, self.k);
        let n = self.n as i64;
        for (t, tile) in self.tiles.iter().enumerate() {
            if tile.row_lo < 1 || tile.row_hi > self.n || tile.row_lo > tile.row_hi {
                return Err(Error::InvalidPartition { tile: t, reason: "row band out of range" });
            }
            for d in tile.d_lo..=tile.d_hi {
                if !u.contains(d) && row_span(tile, d, n).is_some() {
                    return Err(Error::InvalidPartition {
                        tile: t,
                        reason: "tile covers entries off the degree-k pattern",
                    });
                }
            }
        }
        // Per diagonal of the pattern: tiles must partition the row range.
        for d in u.iter() {
            let full_lo = 1.max(1 - d);
            let full_hi = n.min(n - d);
            let mut spans: Vec<(i64, i64)> = self
                .tiles
                .iter()
                .filter_map(|tile| row_span(tile, d, n))
                .collect();
            spans.sort_unstable();
            let mut cursor = full_lo;
            for (idx, &(lo, hi)) in spans.iter().enumerate() {
                if lo < cursor {
                    return Err(Error::InvalidPartition { tile: idx, reason: "tiles overlap" });
                }
                if lo > cursor {
                    return Err(Error::InvalidPartition {
                        tile: idx,
                        reason: "pattern entries left uncovered",
                    });
                }
                cursor = hi + 1;
            }
            if cursor != full_hi + 1 {
                return Err(Error::InvalidPartition {
                    tile: self.tiles.len().saturating_sub(1),
                    reason: "pattern entries left uncovered",
                });
            }
        }
        Ok(())
    }

    /// Δ for one tile, using the translation law: the union over a contiguous
    /// row range on one diagonal is an anchor δ Minkowski-summed with the row
    /// shift interval.
    pub fn tile_delta(&self, nd: &DiagSet, tile: &PairBlock) -> DeltaSet {
        let s = s_sets(nd, self.k);
        let n = self.n as i64;
        let mut acc = super::intervals::IntervalList::empty();
        for d in tile.d_lo..=tile.d_hi {
            if let Some((lo, hi)) = row_span(tile, d, n) {
                acc = acc.union(&delta_row_range(&s, d, lo, hi));
            }
        }
        DeltaSet::assemble(self.n, acc)
    }
}

/// Rows of `tile` that actually hold entries on diagonal `d`.
fn row_span(tile: &PairBlock, d: i64, n: i64) -> Option<(i64, i64)> {
    if d < tile.d_lo || d > tile.d_hi {
        return None;
    }
    let lo = (tile.row_lo as i64).max(1 - d);
    let hi = (tile.row_hi as i64).min(n - d);
    (lo <= hi).then_some((lo, hi))
}

/// Default tiling: row bands of the given height crossed with the runs of the
/// degree-k diagonal pattern. All tiles of one run are translates except the
/// ragged last band.
pub fn default_partition(nd: &DiagSet, k: usize, block: usize) -> Result<Partition> {
    if block == 0 {
        return Err(Error::InvalidPartition { tile: 0, reason: "block height must be >= 1" });
    }
    let n = nd.n();
    let u = u_set(nd, k);
    let mut tiles = Vec::new();
    let mut row = 1usize;
    while row <= n {
        let hi = (row + block - 1).min(n);
        for &(d_lo, d_hi) in u.intervals() {
            let tile = PairBlock { row_lo: row, row_hi: hi, d_lo, d_hi };
            // Skip tiles that hold no entries at all (fully clipped away).
            if (d_lo..=d_hi).any(|d| row_span(&tile, d, n as i64).is_some()) {
                tiles.push(tile);
            }
        }
        row = hi + 1;
    }
    Partition::new(nd, k, tiles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn pattern_pairs(nd: &DiagSet, k: usize) -> BTreeSet<(usize, usize)> {
        let u = u_set(nd, k);
        let n = nd.n();
        let mut out = BTreeSet::new();
        for i in 1..=n {
            for j in 1..=n {
                if u.contains(j as i64 - i as i64) {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    #[test]
    fn single_tile_when_block_covers_everything() {
        let nd = DiagSet::full(6);
        let p = default_partition(&nd, 1, 6).unwrap();
        assert_eq!(p.len(), 1);
        let tile = p.tiles()[0];
        assert_eq!((tile.row_lo, tile.row_hi), (1, 6));
    }

    #[test]
    fn tiles_cover_pattern_exactly_and_disjointly() {
        let mut rng = crate::rng::SplitMix64::new(11);
        for _ in 0..15 {
            let n = 8 + rng.below(56);
            let vals: Vec<i64> =
                (0..4).map(|_| rng.below(2 * n - 1) as i64 - (n as i64 - 1)).collect();
            let nd = DiagSet::from_indices(n, vals);
            let k = 1 + rng.below(4);
            let block = 1 + rng.below(12);
            let p = default_partition(&nd, k, block).unwrap();
            let mut seen = BTreeSet::new();
            for tile in p.tiles() {
                for pair in tile.pairs(n) {
                    assert!(seen.insert(pair), "tiles overlap at {pair:?}");
                }
            }
            assert_eq!(seen, pattern_pairs(&nd, k));
        }
    }

    #[test]
    fn banded_case_gives_contiguous_row_blocks() {
        let nd = DiagSet::banded(20, 2);
        let p = default_partition(&nd, 2, 6).unwrap();
        // one diagonal run, so one tile per row band
        assert_eq!(p.len(), 4);
        assert!(p.tiles().iter().all(|t| (t.d_lo, t.d_hi) == (-4, 4)));
    }

    #[test]
    fn validation_rejects_overlap_and_undercover() {
        let nd = DiagSet::banded(10, 1);
        let full = PairBlock { row_lo: 1, row_hi: 10, d_lo: -2, d_hi: 2 };
        let half = PairBlock { row_lo: 1, row_hi: 5, d_lo: -2, d_hi: 2 };
        assert!(Partition::new(&nd, 2, vec![full, half]).is_err());
        assert!(Partition::new(&nd, 2, vec![half]).is_err());
        assert!(Partition::new(&nd, 2, vec![full]).is_ok());
    }

    #[test]
    fn tile_delta_matches_pairwise_union() {
        let nd = DiagSet::from_intervals(30, [(-3, -2), (0, 1), (5, 5)]);
        let p = default_partition(&nd, 2, 7).unwrap();
        for tile in p.tiles() {
            let pairs: Vec<(usize, usize)> = tile.pairs(30).collect();
            let expect = super::super::delta::delta_union(&nd, &pairs, 2).unwrap();
            let got = p.tile_delta(&nd, tile);
            assert_eq!(got.clipped(), expect.clipped());
        }
    }
}
