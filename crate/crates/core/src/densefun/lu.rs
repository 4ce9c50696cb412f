//! LU factorization with partial pivoting, generic over the scalar type.
//! Used by the Padé exponential to solve its linear system.

use crate::error::{Error, Result};
use crate::matstore::DenseMatrix;
use crate::scalar::Scalar;

pub(crate) struct Lu<S: Scalar> {
    lu: DenseMatrix<S>,
    perm: Vec<usize>,
}

pub(crate) fn factor<S: Scalar>(a: &DenseMatrix<S>) -> Result<Lu<S>> {
    let n = a.require_square()?;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        // pivot row
        let mut p = k;
        let mut best = lu[(k, k)].abs();
        for i in (k + 1)..n {
            let v = lu[(i, k)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return Err(Error::FunctionUndefined {
                function: "lu-solve".into(),
                at: f64::NAN,
            });
        }
        if p != k {
            perm.swap(p, k);
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
        }
        let pivot = lu[(k, k)];
        for i in (k + 1)..n {
            let m = lu[(i, k)] / pivot;
            lu[(i, k)] = m;
            if m != S::ZERO {
                for j in (k + 1)..n {
                    let sub = m * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
    }
    Ok(Lu { lu, perm })
}

impl<S: Scalar> Lu<S> {
    /// Solve `A X = B` for a matrix right-hand side.
    pub(crate) fn solve(&self, b: &DenseMatrix<S>) -> DenseMatrix<S> {
        let n = self.lu.rows();
        assert_eq!(b.rows(), n);
        let m = b.cols();
        let mut x = DenseMatrix::zeros(n, m);
        for i in 0..n {
            let src = self.perm[i];
            for j in 0..m {
                x[(i, j)] = b[(src, j)];
            }
        }
        // forward substitution (unit lower)
        for i in 1..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                if l != S::ZERO {
                    for j in 0..m {
                        let sub = l * x[(k, j)];
                        x[(i, j)] -= sub;
                    }
                }
            }
        }
        // back substitution
        for i in (0..n).rev() {
            let d = self.lu[(i, i)];
            for k in (i + 1)..n {
                let u = self.lu[(i, k)];
                if u != S::ZERO {
                    for j in 0..m {
                        let sub = u * x[(k, j)];
                        x[(i, j)] -= sub;
                    }
                }
            }
            for j in 0..m {
                x[(i, j)] = x[(i, j)] / d;
            }
        }
        x
    }
}
