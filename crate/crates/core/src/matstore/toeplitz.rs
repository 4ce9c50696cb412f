//! Constant-diagonal matrices given by their first column and first row.

use super::dense::DenseMatrix;
use super::diagmatrix::DiagMatrix;
use crate::diagsets::{DiagSet, IndexSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A Toeplitz matrix: entry `(i, j)` equals `row[j-i]` for `j >= i` and
/// `col[i-j]` otherwise (1-based indices, 0-based storage of col/row).
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzMatrix<S: Scalar> {
    col: Vec<S>,
    row: Vec<S>,
}

impl<S: Scalar> ToeplitzMatrix<S> {
    pub fn new(col: Vec<S>, row: Vec<S>) -> Result<Self> {
        if col.is_empty() || col.len() != row.len() {
            return Err(Error::DimensionMismatch { expected: col.len(), found: row.len() });
        }
        if col[0] != row[0] {
            return Err(Error::InvalidCoefficients(
                "first column and first row must agree at the corner",
            ));
        }
        Ok(ToeplitzMatrix { col, row })
    }

    /// Symmetric constructor from the first column.
    pub fn symmetric(col: Vec<S>) -> Result<Self> {
        let row = col.clone();
        Self::new(col, row)
    }

    pub fn n(&self) -> usize {
        self.col.len()
    }

    pub fn first_col(&self) -> &[S] {
        &self.col
    }

    pub fn first_row(&self) -> &[S] {
        &self.row
    }

    /// Value of the whole diagonal `r`.
    pub fn diag_value(&self, r: i64) -> S {
        if r >= 0 {
            self.row[r as usize]
        } else {
            self.col[(-r) as usize]
        }
    }

    /// Entry accessor with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> S {
        debug_assert!(i >= 1 && i <= self.n() && j >= 1 && j <= self.n());
        self.diag_value(j as i64 - i as i64)
    }

    pub fn nd(&self, tol: f64) -> DiagSet {
        let n = self.n();
        let b = n as i64 - 1;
        DiagSet::from_indices(n, (-b..=b).filter(|&r| self.diag_value(r).abs() > tol))
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        let n = self.n();
        DenseMatrix::from_fn(n, n, |i, j| self.diag_value(j as i64 - i as i64))
    }

    pub fn to_diag_matrix(&self, tol: f64) -> DiagMatrix<S> {
        let n = self.n();
        let mut m = DiagMatrix::zeros(n);
        let b = n as i64 - 1;
        for r in -b..=b {
            let v = self.diag_value(r);
            if v.abs() > tol {
                m.set_diag(r, vec![v; DiagMatrix::<S>::diag_len(n, r)]).unwrap();
            }
        }
        m
    }

    pub fn extract(&self, rows: &IndexSet, cols: &IndexSet) -> Result<DenseMatrix<S>> {
        if rows.n() != self.n() || cols.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: rows.n() });
        }
        let rm: Vec<usize> = rows.iter().collect();
        let cm: Vec<usize> = cols.iter().collect();
        Ok(DenseMatrix::from_fn(rm.len(), cm.len(), |a, b| self.get(rm[a], cm[b])))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.col.iter().zip(self.row.iter()).all(|(&c, &r)| (c - r.conj()).abs() <= tol)
    }

    pub fn scale(&self, c: S) -> Self {
        ToeplitzMatrix {
            col: self.col.iter().map(|&x| x * c).collect(),
            row: self.row.iter().map(|&x| x * c).collect(),
        }
    }

    /// `T - shift*I` on the diagonal (used to move the spectrum).
    pub fn shift_diagonal(&self, shift: S) -> Self {
        let mut col = self.col.clone();
        let mut row = self.row.clone();
        col[0] -= shift;
        row[0] -= shift;
        ToeplitzMatrix { col, row }
    }
}
