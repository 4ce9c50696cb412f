//! Sparse matrix storage keyed by diagonal index.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::dense::DenseMatrix;
use crate::diagsets::{DiagSet, IndexSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An `n x n` matrix stored as a map from diagonal index `r` to the vector of
/// values on that diagonal.
///
/// Diagonal `r` holds the entries `A[i, i+r]` (1-based domain indices); its
/// vector has length `n - |r|`. Explicitly stored zeros are kept: structure
/// and numerics are separated, and some generators need stored zeros inside
/// an otherwise nonzero diagonal (block seams).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagMatrix<S: Scalar> {
    n: usize,
    diags: BTreeMap<i64, Vec<S>>,
}

impl<S: Scalar> DiagMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1);
        DiagMatrix { n, diags: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diag_len(n: usize, r: i64) -> usize {
        n - r.unsigned_abs() as usize
    }

    fn check_diag_index(&self, r: i64) -> Result<()> {
        let b = self.n as i64 - 1;
        if r < -b || r > b {
            return Err(Error::IndexOutOfRange { index: r, n: self.n });
        }
        Ok(())
    }

    /// Insert (replace) a whole diagonal.
    pub fn set_diag(&mut self, r: i64, values: Vec<S>) -> Result<()> {
        self.check_diag_index(r)?;
        if values.len() != Self::diag_len(self.n, r) {
            return Err(Error::DimensionMismatch {
                expected: Self::diag_len(self.n, r),
                found: values.len(),
            });
        }
        self.diags.insert(r, values);
        Ok(())
    }

    pub fn diag(&self, r: i64) -> Option<&[S]> {
        self.diags.get(&r).map(|v| v.as_slice())
    }

    /// Stored diagonal indices (whether or not their values are all zero).
    pub fn stored_diagonals(&self) -> impl Iterator<Item = i64> + '_ {
        self.diags.keys().copied()
    }

    /// Entry accessor with 1-based indices. Unstored entries read as zero.
    pub fn get(&self, i: usize, j: usize) -> S {
        debug_assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        let r = j as i64 - i as i64;
        match self.diags.get(&r) {
            Some(v) => {
                let t = if r >= 0 { i - 1 } else { j - 1 };
                v[t]
            }
            None => S::ZERO,
        }
    }

    /// Entry write with 1-based indices, materializing the diagonal if needed.
    pub fn set(&mut self, i: usize, j: usize, value: S) {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        let r = j as i64 - i as i64;
        let len = Self::diag_len(self.n, r);
        let v = self.diags.entry(r).or_insert_with(|| vec![S::ZERO; len]);
        let t = if r >= 0 { i - 1 } else { j - 1 };
        v[t] = value;
    }

    pub fn add_assign_entry(&mut self, i: usize, j: usize, value: S) {
        let cur = self.get(i, j);
        self.set(i, j, cur + value);
    }

    pub fn from_triplets(n: usize, triplets: &[(usize, usize, S)]) -> Result<Self> {
        let mut m = Self::zeros(n);
        for &(i, j, v) in triplets {
            if i < 1 || i > n {
                return Err(Error::IndexOutOfRange { index: i as i64, n });
            }
            if j < 1 || j > n {
                return Err(Error::IndexOutOfRange { index: j as i64, n });
            }
            m.add_assign_entry(i, j, v);
        }
        Ok(m)
    }

    /// Structural diagonal set: diagonal `r` is a member iff some stored
    /// entry on it has modulus strictly greater than `tol`.
    pub fn nd(&self, tol: f64) -> DiagSet {
        assert!(tol >= 0.0);
        let indices = self
            .diags
            .iter()
            .filter(|(_, v)| v.iter().any(|x| x.abs() > tol))
            .map(|(&r, _)| r);
        DiagSet::from_indices(self.n, indices)
    }

    /// Number of stored scalars.
    pub fn stored_len(&self) -> usize {
        self.diags.values().map(|v| v.len()).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        let mut out = DenseMatrix::zeros(self.n, self.n);
        for (&r, v) in &self.diags {
            for (t, &val) in v.iter().enumerate() {
                let (i, j) = if r >= 0 { (t, t + r as usize) } else { (t + (-r) as usize, t) };
                out[(i, j)] = val;
            }
        }
        out
    }

    /// Extract the dense submatrix `A[rows, cols]`: entry `(rank(i)-1,
    /// rank(j)-1)` of the result is `A[i, j]`.
    pub fn extract(&self, rows: &IndexSet, cols: &IndexSet) -> Result<DenseMatrix<S>> {
        if rows.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: rows.n() });
        }
        if cols.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: cols.n() });
        }
        let row_members: Vec<usize> = rows.iter().collect();
        let col_members: Vec<usize> = cols.iter().collect();
        let mut out = DenseMatrix::zeros(row_members.len(), col_members.len());
        for (a, &i) in row_members.iter().enumerate() {
            for (b, &j) in col_members.iter().enumerate() {
                out[(a, b)] = self.get(i, j);
            }
        }
        Ok(out)
    }

    /// Hermitian check on stored values: `max |a_ij - conj(a_ji)| <= tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        for (&r, v) in &self.diags {
            if r < 0 {
                continue;
            }
            match self.diags.get(&(-r)) {
                Some(w) => {
                    if v.iter().zip(w.iter()).any(|(&a, &b)| (a - b.conj()).abs() > tol) {
                        return false;
                    }
                }
                None => {
                    if v.iter().any(|&a| a.abs() > tol) {
                        return false;
                    }
                }
            }
            if r == 0 && v.iter().any(|&a| a.im().abs() > tol) {
                return false;
            }
        }
        // negative diagonals with no positive partner
        for (&r, v) in &self.diags {
            if r < 0 && !self.diags.contains_key(&-r) && v.iter().any(|&a| a.abs() > tol) {
                return false;
            }
        }
        true
    }

    pub fn norm_max(&self) -> f64 {
        self.diags
            .values()
            .flat_map(|v| v.iter())
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute row sum over stored entries.
    pub fn norm_inf(&self) -> f64 {
        let mut sums = vec![0.0f64; self.n];
        for (&r, v) in &self.diags {
            for (t, &val) in v.iter().enumerate() {
                let i = if r >= 0 { t } else { t + (-r) as usize };
                sums[i] += val.abs();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Maximum absolute column sum over stored entries.
    pub fn norm_1(&self) -> f64 {
        let mut sums = vec![0.0f64; self.n];
        for (&r, v) in &self.diags {
            for (t, &val) in v.iter().enumerate() {
                let j = if r >= 0 { t + r as usize } else { t };
                sums[j] += val.abs();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    pub fn scale(&self, c: S) -> Self {
        DiagMatrix {
            n: self.n,
            diags: self
                .diags
                .iter()
                .map(|(&r, v)| (r, v.iter().map(|&x| x * c).collect()))
                .collect(),
        }
    }
}

impl DiagMatrix<f64> {
    pub fn to_complex(&self) -> DiagMatrix<Complex64> {
        DiagMatrix {
            n: self.n,
            diags: self
                .diags
                .iter()
                .map(|(&r, v)| (r, v.iter().map(|&x| Complex64::new(x, 0.0)).collect()))
                .collect(),
        }
    }
}

/// Discrete Laplacian shifted onto a square grid: `I ⊗ T + T ⊗ I` with
/// `T = tridiag(-1, 4, -1)` of size `n`, giving an `n² x n²` matrix with
/// diagonals {-n, -1, 0, 1, n}. The ±1 diagonals carry explicit zeros at the
/// block seams.
pub fn kron_sum_laplacian(n: usize) -> DiagMatrix<f64> {
    assert!(n >= 1);
    let nn = n * n;
    let mut m = DiagMatrix::zeros(nn);
    m.set_diag(0, vec![8.0; nn]).unwrap();
    if nn >= 2 {
        let mut off = vec![-1.0; nn - 1];
        for b in 1..n {
            off[b * n - 1] = 0.0;
        }
        m.set_diag(1, off.clone()).unwrap();
        m.set_diag(-1, off).unwrap();
    }
    if nn > n {
        m.set_diag(n as i64, vec![-1.0; nn - n]).unwrap();
        m.set_diag(-(n as i64), vec![-1.0; nn - n]).unwrap();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagsets::IndexSet;

    #[test]
    fn nd_of_figure_pattern() {
        // 6x6 pattern with nonzero diagonals {-5, -4, -3, 0, 1, 5}
        let mut m = DiagMatrix::zeros(6);
        for r in [-5i64, -4, -3, 0, 1, 5] {
            let len = DiagMatrix::<f64>::diag_len(6, r);
            m.set_diag(r, vec![1.0; len]).unwrap();
        }
        let nd = m.nd(0.0);
        assert_eq!(nd.intervals(), &[(-5, -3), (0, 1), (5, 5)]);
    }

    #[test]
    fn nd_respects_tolerance() {
        let mut m = DiagMatrix::zeros(4);
        m.set(1, 2, 1e-3);
        assert!(m.nd(0.0).contains(1));
        assert!(m.nd(1e-2).is_empty());
        assert!(DiagMatrix::<f64>::zeros(5).nd(0.0).is_empty());
    }

    #[test]
    fn stored_zero_is_structural_but_not_numeric() {
        let mut m = DiagMatrix::zeros(4);
        m.set_diag(1, vec![0.0, 2.0, 0.0]).unwrap();
        assert!(m.nd(0.0).contains(1));
        m.set_diag(1, vec![0.0, 0.0, 0.0]).unwrap();
        assert!(!m.nd(0.0).contains(1));
    }

    #[test]
    fn extract_full_equals_dense() {
        let mut rng = crate::rng::SplitMix64::new(5);
        let n = 7;
        let mut m = DiagMatrix::zeros(n);
        for _ in 0..10 {
            let i = 1 + rng.below(n);
            let j = 1 + rng.below(n);
            m.set(i, j, rng.uniform(-1.0, 1.0));
        }
        let all = IndexSet::all(n);
        assert_eq!(m.extract(&all, &all).unwrap(), m.to_dense());
    }

    #[test]
    fn extract_respects_order_function() {
        let mut m = DiagMatrix::zeros(6);
        m.set(3, 5, 2.5);
        let idx = IndexSet::from_members(6, [3, 5]);
        let sub = m.extract(&idx, &idx).unwrap();
        // rank(3) = 1, rank(5) = 2 so A[3,5] lands at dense position (0, 1)
        assert_eq!(sub[(0, 1)], 2.5);
        assert_eq!(sub[(1, 0)], 0.0);
    }

    #[test]
    fn extract_matches_entrywise_lookup() {
        let mut rng = crate::rng::SplitMix64::new(21);
        let n = 12;
        let mut m = DiagMatrix::zeros(n);
        for _ in 0..30 {
            m.set(1 + rng.below(n), 1 + rng.below(n), rng.uniform(-2.0, 2.0));
        }
        let rows = IndexSet::from_members(n, [2, 3, 7, 11]);
        let cols = IndexSet::from_members(n, [1, 5, 9]);
        let sub = m.extract(&rows, &cols).unwrap();
        for (a, i) in rows.iter().enumerate() {
            for (b, j) in cols.iter().enumerate() {
                assert_eq!(sub[(a, b)], m.get(i, j));
            }
        }
    }

    #[test]
    fn kron_sum_structure() {
        let m = kron_sum_laplacian(3);
        assert_eq!(m.n(), 9);
        assert_eq!(m.nd(0.0).intervals(), &[(-3, -3), (-1, 1), (3, 3)]);
        // diagonal is 8 everywhere
        assert!(m.diag(0).unwrap().iter().all(|&v| v == 8.0));
        // seam: entry (3,4) crosses the first block boundary
        assert_eq!(m.get(3, 4), 0.0);
        assert_eq!(m.get(1, 2), -1.0);
        assert!(m.is_hermitian(0.0));
    }

    #[test]
    fn kron_sum_spectrum_inside_known_interval() {
        for n in [2usize, 4, 7] {
            let m = kron_sum_laplacian(n).to_dense();
            let eig = crate::densefun::sym_eigenvalues(&m).unwrap();
            assert!(eig.first().unwrap() >= &(4.0 - 1e-10), "n={n}");
            assert!(eig.last().unwrap() <= &(12.0 + 1e-10), "n={n}");
        }
    }

    #[test]
    fn kron_sum_small_eigenvalues() {
        // n=2: T = [[4,-1],[-1,4]] has eigenvalues {3, 5}; the grid operator
        // has all pairwise sums {6, 8, 8, 10}.
        let m = kron_sum_laplacian(2).to_dense();
        // check via trace and trace of square (symmetric 4x4)
        let tr: f64 = (0..4).map(|i| m[(i, i)]).sum();
        let m2 = m.matmul(&m);
        let tr2: f64 = (0..4).map(|i| m2[(i, i)]).sum();
        assert!((tr - 32.0).abs() < 1e-12);
        assert!((tr2 - (36.0 + 64.0 + 64.0 + 100.0)).abs() < 1e-12);
    }

    #[test]
    fn hermitian_check_on_complex() {
        use num_complex::Complex64;
        let mut m = DiagMatrix::<Complex64>::zeros(3);
        m.set(1, 2, Complex64::new(1.0, 2.0));
        m.set(2, 1, Complex64::new(1.0, -2.0));
        assert!(m.is_hermitian(0.0));
        m.set(2, 1, Complex64::new(1.0, 2.0));
        assert!(!m.is_hermitian(1e-12));
    }
}
