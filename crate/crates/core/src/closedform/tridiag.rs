//! Closed-form elements for symmetric tridiagonal Toeplitz matrices.
//!
//! The large-n limit of `[f(T_n)]_{pl}` splits into a Toeplitz part (driven
//! by `p - l`) minus a Hankel part (driven by `p + l`):
//!
//! ```text
//! (1/π) ∫ f(c + 2b cos x) [cos((p-l)x) - cos((p+l)x)] dx
//! ```
//!
//! and the exponential specializes to scaled modified Bessel functions.

use super::bessel::bessel_ive;
use super::quadrature::quadrature;
use crate::densefun::ScalarFunction;
use crate::error::Result;
use crate::matstore::DenseMatrix;

/// Limit value of `[f(T_n)]_{pl}` for the tridiagonal symbol with diagonal
/// `c` and off-diagonal `b`.
pub fn tridiag_element(
    b: f64,
    c: f64,
    f: &ScalarFunction,
    p: usize,
    l: usize,
    tol: f64,
) -> Result<f64> {
    let d = p.abs_diff(l) as f64;
    let s = (p + l) as f64;
    let toeplitz = quadrature(|x| Ok(f.eval(c + 2.0 * b * x.cos())? * (d * x).cos()), tol)?;
    let hankel = quadrature(|x| Ok(f.eval(c + 2.0 * b * x.cos())? * (s * x).cos()), tol)?;
    Ok((toeplitz - hankel) / std::f64::consts::PI)
}

/// Limit value of `[exp(-α T)]_{pl}` for `T = tridiag(-1, 2, -1)`:
/// `e^{-2α} (I_{p-l}(2α) - I_{p+l}(2α))`, evaluated jointly in scaled form.
pub fn exp_tridiag_element(alpha: f64, p: usize, l: usize) -> f64 {
    assert!(alpha >= 0.0);
    let x = 2.0 * alpha;
    bessel_ive(p as i64 - l as i64, x) - bessel_ive((p + l) as i64, x)
}

/// Assemble the full n×n closed-form approximation of `f(T_n)` for the
/// tridiagonal symbol `(c; b)`. Entries in the lower-right half are filled by
/// per-symmetry (the limit formula sees only the upper-left boundary).
pub fn assemble_tridiag(
    b: f64,
    c: f64,
    f: &ScalarFunction,
    n: usize,
    tol: f64,
) -> Result<DenseMatrix<f64>> {
    // Toeplitz table over |p - l| and Hankel table over p + l <= n + 1
    let mut toep = vec![0.0; n];
    for (d, slot) in toep.iter_mut().enumerate() {
        *slot = quadrature(
            |x| Ok(f.eval(c + 2.0 * b * x.cos())? * (d as f64 * x).cos()),
            tol,
        )?;
    }
    let mut hank = vec![0.0; n + 2];
    for (s, slot) in hank.iter_mut().enumerate().take(n + 2).skip(2) {
        *slot = quadrature(
            |x| Ok(f.eval(c + 2.0 * b * x.cos())? * (s as f64 * x).cos()),
            tol,
        )?;
    }
    let inv_pi = 1.0 / std::f64::consts::PI;
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        let (mut p, mut l) = (i + 1, j + 1);
        if p + l > n + 1 {
            p = n + 1 - p;
            l = n + 1 - l;
            std::mem::swap(&mut p, &mut l);
        }
        (toep[p.abs_diff(l)] - hank[p + l]) * inv_pi
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densefun::funm_hermitian;
    use crate::matstore::ToeplitzMatrix;

    fn tridiag(n: usize, c: f64, b: f64) -> ToeplitzMatrix<f64> {
        let mut col = vec![0.0; n];
        col[0] = c;
        col[1] = b;
        ToeplitzMatrix::symmetric(col).unwrap()
    }

    #[test]
    fn identity_function_recovers_symbol_coefficients() {
        // cosine orthogonality: diagonal -> c, first off-diagonal -> b,
        // distant entries -> 0
        let f = ScalarFunction::Polynomial(vec![0.0, 1.0]);
        let diag = tridiag_element(-1.0, 4.0, &f, 30, 30, 1e-12).unwrap();
        assert!((diag - 4.0).abs() < 1e-10);
        let off = tridiag_element(-1.0, 4.0, &f, 30, 31, 1e-12).unwrap();
        assert!((off + 1.0).abs() < 1e-10);
        let far = tridiag_element(-1.0, 4.0, &f, 28, 33, 1e-12).unwrap();
        assert!(far.abs() < 1e-10);
    }

    #[test]
    fn exponential_agrees_with_bessel_identity() {
        // a(x) = -x + 2 - x^{-1} scaled by -α: f = exp(-α ·) on tridiag(-1,2,-1)
        let alpha = 1.3;
        let f = ScalarFunction::callback("exp-neg-scaled", move |z| (-alpha * z).exp());
        for (p, l) in [(40usize, 40usize), (40, 41), (38, 44)] {
            let via_integral = tridiag_element(-1.0, 2.0, &f, p, l, 1e-12).unwrap();
            let via_bessel = exp_tridiag_element(alpha, p, l);
            assert!(
                (via_integral - via_bessel).abs() < 1e-10,
                "(p,l)=({p},{l}): {via_integral} vs {via_bessel}"
            );
        }
    }

    #[test]
    fn bessel_identity_small_arguments() {
        // α = 0: the identity matrix
        assert_eq!(exp_tridiag_element(0.0, 5, 5), 1.0);
        assert_eq!(exp_tridiag_element(0.0, 5, 7), 0.0);
        // order symmetry in (p, l)
        let a = exp_tridiag_element(0.7, 3, 9);
        let b = exp_tridiag_element(0.7, 9, 3);
        assert_eq!(a, b);
        // α = 1, p = l = 1: e^{-2} (I_0(2) - I_2(2)), with the reference
        // values I_0(2) = 2.2795853023360673 and I_2(2) = 0.6889484476987382
        let expect = (2.2795853023360673 - 0.6889484476987382) * (-2.0f64).exp();
        assert!((exp_tridiag_element(1.0, 1, 1) - expect).abs() < 1e-13);
        assert!((expect - 0.2153).abs() < 5e-5);
    }

    #[test]
    fn convergence_in_n_beyond_sixty() {
        // finite-n errors of the limit formula settle monotonically (up to a
        // factor-2 plateau at the quadrature floor) and are tiny by n = 100
        let f = ScalarFunction::InvSqrt;
        let mut prev = f64::INFINITY;
        for n in [60usize, 80, 100] {
            let t = tridiag(n, 4.0, -1.0);
            let dense = funm_hermitian(&t.to_dense(), &f).unwrap();
            let assembled = assemble_tridiag(-1.0, 4.0, &f, n, 1e-11).unwrap();
            let err = assembled.sub(&dense).norm_2();
            assert!(err <= 2.0 * prev, "n={n}: err {err} prev {prev}");
            prev = err;
        }
        assert!(prev < 1e-6);
    }

    #[test]
    fn interior_elements_match_dense_kernel() {
        let n = 200;
        let t = tridiag(n, 2.0, -1.0);
        let f = ScalarFunction::Exp;
        let dense = funm_hermitian(&t.to_dense(), &f).unwrap();
        for (p, l) in [(100usize, 100usize), (95, 104), (60, 61)] {
            let v = tridiag_element(-1.0, 2.0, &f, p, l, 1e-12).unwrap();
            assert!(
                (v - dense[(p - 1, l - 1)]).abs() < 1e-8,
                "(p,l)=({p},{l})"
            );
        }
    }

    #[test]
    fn assembled_matrix_close_to_dense() {
        let n = 80;
        let t = tridiag(n, 4.0, -1.0);
        let f = ScalarFunction::InvSqrt;
        let dense = funm_hermitian(&t.to_dense(), &f).unwrap();
        let assembled = assemble_tridiag(-1.0, 4.0, &f, n, 1e-11).unwrap();
        let err = assembled.sub(&dense).norm_2();
        assert!(err < 1e-6, "2-norm err {err}");
    }
}
