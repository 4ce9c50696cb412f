//! Dense matrix-function kernels used on extracted submatrices and as
//! brute-force oracles in the tests.

pub mod cheb;
pub mod eig;
pub mod expm;
mod lu;

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matstore::{DenseMatrix, DiagMatrix};
use crate::scalar::Scalar;

pub use cheb::{cheb_approx, ChebApprox};
pub use eig::{poly_roots, real_eigenvalues, sym_eigen, sym_eigenvalues};
pub use expm::expm;

/// A scalar function to be lifted to matrix argument.
#[derive(Clone)]
pub enum ScalarFunction {
    Exp,
    Log,
    Sqrt,
    Inv,
    InvSqrt,
    /// Monomial-basis coefficients `c[0] + c[1] x + ...`.
    Polynomial(Vec<f64>),
    /// A pure real callback. No complex-plane evaluation is available.
    Callback { name: String, f: Arc<dyn Fn(f64) -> f64 + Send + Sync> },
}

impl std::fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ScalarFunction::{}", self.name())
    }
}

impl ScalarFunction {
    pub fn callback(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ScalarFunction::Callback { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> String {
        match self {
            ScalarFunction::Exp => "exp".into(),
            ScalarFunction::Log => "log".into(),
            ScalarFunction::Sqrt => "sqrt".into(),
            ScalarFunction::Inv => "inv".into(),
            ScalarFunction::InvSqrt => "inv-sqrt".into(),
            ScalarFunction::Polynomial(c) => format!("polynomial(deg {})", c.len().saturating_sub(1)),
            ScalarFunction::Callback { name, .. } => name.clone(),
        }
    }

    pub fn as_polynomial(&self) -> Option<&[f64]> {
        match self {
            ScalarFunction::Polynomial(c) => Some(c),
            _ => None,
        }
    }

    fn undefined(&self, at: f64) -> Error {
        Error::FunctionUndefined { function: self.name(), at }
    }

    /// Evaluate on the real line, with domain checks.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            ScalarFunction::Exp => Ok(x.exp()),
            ScalarFunction::Log => {
                if x <= 0.0 {
                    Err(self.undefined(x))
                } else {
                    Ok(x.ln())
                }
            }
            ScalarFunction::Sqrt => {
                if x < 0.0 {
                    Err(self.undefined(x))
                } else {
                    Ok(x.sqrt())
                }
            }
            ScalarFunction::Inv => {
                if x == 0.0 {
                    Err(self.undefined(x))
                } else {
                    Ok(1.0 / x)
                }
            }
            ScalarFunction::InvSqrt => {
                if x <= 0.0 {
                    Err(self.undefined(x))
                } else {
                    Ok(1.0 / x.sqrt())
                }
            }
            ScalarFunction::Polynomial(c) => {
                Ok(c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci))
            }
            ScalarFunction::Callback { f, .. } => Ok(f(x)),
        }
    }

    /// Principal-branch evaluation on the complex plane (used by the decay
    /// bound, which samples |f| on circles). Callbacks have none.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        match self {
            ScalarFunction::Exp => Ok(z.exp()),
            ScalarFunction::Log => Ok(z.ln()),
            ScalarFunction::Sqrt => Ok(z.sqrt()),
            ScalarFunction::Inv => Ok(Complex64::new(1.0, 0.0) / z),
            ScalarFunction::InvSqrt => Ok(Complex64::new(1.0, 0.0) / z.sqrt()),
            ScalarFunction::Polynomial(c) => {
                Ok(c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &ci| acc * z + ci))
            }
            ScalarFunction::Callback { name, .. } => {
                Err(Error::ComplexUnsupported { function: name.clone() })
            }
        }
    }
}

/// Where the eigenvalues of a matrix are known to live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnclosureKind {
    /// Real interval `[lo, hi]` (Hermitian matrices).
    Interval { lo: f64, hi: f64 },
    /// Disk of the given radius centered at the origin.
    Disk { radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnclosureSource {
    Exact,
    Gershgorin,
    NormBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEnclosure {
    pub kind: EnclosureKind,
    pub source: EnclosureSource,
}

impl SpectralEnclosure {
    pub fn interval(lo: f64, hi: f64, source: EnclosureSource) -> Self {
        SpectralEnclosure { kind: EnclosureKind::Interval { lo, hi }, source }
    }

    pub fn disk(radius: f64, source: EnclosureSource) -> Self {
        SpectralEnclosure { kind: EnclosureKind::Disk { radius }, source }
    }

    pub fn contains_real(&self, x: f64) -> bool {
        match self.kind {
            EnclosureKind::Interval { lo, hi } => lo <= x && x <= hi,
            EnclosureKind::Disk { radius } => x.abs() <= radius,
        }
    }
}

/// Eigenvalue enclosure of a diagonal-sparse matrix: Gershgorin interval for
/// Hermitian inputs, a norm-product disk otherwise.
pub fn enclosure<S: Scalar>(a: &DiagMatrix<S>) -> SpectralEnclosure {
    let n = a.n();
    let herm_tol = 1e-12 * a.norm_max().max(f64::MIN_POSITIVE);
    if a.is_hermitian(herm_tol) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut centers = vec![0.0f64; n];
        let mut radii = vec![0.0f64; n];
        for r in a.stored_diagonals().collect::<Vec<_>>() {
            let v = a.diag(r).unwrap();
            for (t, &val) in v.iter().enumerate() {
                let i = if r >= 0 { t } else { t + (-r) as usize };
                if r == 0 {
                    centers[i] = val.re();
                } else {
                    radii[i] += val.abs();
                }
            }
        }
        for i in 0..n {
            lo = lo.min(centers[i] - radii[i]);
            hi = hi.max(centers[i] + radii[i]);
        }
        if !lo.is_finite() || !hi.is_finite() {
            lo = 0.0;
            hi = 0.0;
        }
        SpectralEnclosure::interval(lo, hi, EnclosureSource::Gershgorin)
    } else {
        let radius = (a.norm_1() * a.norm_inf()).sqrt();
        SpectralEnclosure::disk(radius, EnclosureSource::NormBound)
    }
}

/// Horner evaluation of a real-coefficient polynomial at a matrix argument.
pub fn polyvalm<S: Scalar>(coeffs: &[f64], b: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    let n = b.require_square()?;
    if coeffs.is_empty() {
        return Ok(DenseMatrix::zeros(n, n));
    }
    let mut acc = DenseMatrix::<S>::zeros(n, n);
    acc.shift_diagonal(S::from_f64(*coeffs.last().unwrap()));
    for &c in coeffs.iter().rev().skip(1) {
        acc = acc.matmul(b);
        acc.shift_diagonal(S::from_f64(c));
    }
    Ok(acc)
}

/// Relative Hermitian-deviation tolerance used by [`funm_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Hermitian matrix function through the spectral decomposition:
/// `V f(Λ) V*`, result symmetrized. Complex Hermitian inputs are routed
/// through the real symmetric solver via the standard 2n×2n embedding.
pub fn funm_hermitian<S: Scalar>(b: &DenseMatrix<S>, f: &ScalarFunction) -> Result<DenseMatrix<S>> {
    let n = b.require_square()?;
    let scale = b.norm_fro();
    let dev = b.hermitian_deviation();
    if dev > HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian { deviation: dev, scale });
    }
    if n == 0 {
        return Ok(DenseMatrix::zeros(0, 0));
    }
    if S::IS_REAL {
        let real = b.map(|x| x.re());
        let out = funm_symmetric_real(&real, f)?;
        Ok(out.map(S::from_f64))
    } else {
        // [Re -Im; Im Re] is symmetric when b is Hermitian; f commutes with
        // the embedding, so the function of the big matrix holds the real and
        // imaginary parts of f(b) in its blocks.
        let mut big = DenseMatrix::<f64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let re = b[(i, j)].re();
                let im = b[(i, j)].im();
                big[(i, j)] = re;
                big[(n + i, n + j)] = re;
                big[(i, n + j)] = -im;
                big[(n + i, j)] = im;
            }
        }
        let fb = funm_symmetric_real(&big, f)?;
        let out = DenseMatrix::from_fn(n, n, |i, j| {
            S::from_complex(Complex64::new(fb[(i, j)], fb[(n + i, j)]))
        });
        Ok(out)
    }
}

fn funm_symmetric_real(b: &DenseMatrix<f64>, f: &ScalarFunction) -> Result<DenseMatrix<f64>> {
    let mut sym = b.clone();
    sym.symmetrize();
    let (d, v) = sym_eigen(&sym)?;
    let w: Vec<f64> = d.iter().map(|&lam| f.eval(lam)).collect::<Result<_>>()?;
    let n = d.len();
    // V diag(w) Vᵀ
    let mut scaled = v.clone();
    for i in 0..n {
        for j in 0..n {
            scaled[(i, j)] *= w[j];
        }
    }
    let mut out = scaled.matmul(&v.transpose());
    out.symmetrize();
    Ok(out)
}

/// Eigenvalue-based trace of `f(B)` for Hermitian `B` (no eigenvectors).
pub fn trace_funm_hermitian(b: &DenseMatrix<f64>, f: &ScalarFunction) -> Result<f64> {
    let scale = b.norm_fro();
    let dev = b.hermitian_deviation();
    if dev > HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian { deviation: dev, scale });
    }
    let mut sym = b.clone();
    sym.symmetrize();
    let d = sym_eigenvalues(&sym)?;
    d.iter().map(|&lam| f.eval(lam)).sum()
}

/// The class of matrices a kernel was asked to handle, for dispatch and
/// error reporting.
fn class_name(hermitian: bool) -> &'static str {
    if hermitian {
        "Hermitian"
    } else {
        "general"
    }
}

/// Dense kernel dispatch: polynomials evaluate by Horner, Hermitian inputs
/// through the spectral decomposition, the exponential of anything through
/// scaling-and-squaring. Everything else on a non-Hermitian matrix is
/// unsupported.
pub fn dense_kernel<S: Scalar>(
    b: &DenseMatrix<S>,
    f: &ScalarFunction,
    hermitian: bool,
) -> Result<DenseMatrix<S>> {
    if let Some(coeffs) = f.as_polynomial() {
        return polyvalm(coeffs, b);
    }
    if hermitian {
        return funm_hermitian(b, f);
    }
    match f {
        ScalarFunction::Exp => expm(b),
        _ => Err(Error::KernelUnsupported {
            function: f.name(),
            class: class_name(hermitian).into(),
        }),
    }
}

/// Structural check + kernel choice for a diagonal-sparse input: decides
/// Hermitian-ness once from stored values.
pub fn matrix_is_hermitian<S: Scalar>(a: &DiagMatrix<S>) -> bool {
    a.is_hermitian(HERMITIAN_TOL * a.norm_max().max(f64::MIN_POSITIVE))
}
