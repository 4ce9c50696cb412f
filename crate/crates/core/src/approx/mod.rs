//! The core approximation engines: single elements, traces, diagonals, and
//! whole matrix functions, all driven by the δ/Δ index machinery, plus the
//! per-diagonal decay bound.
//!
//! Every engine shares the same contract: it is exact (to roundoff) whenever
//! `f` is a polynomial of degree at most `k`, and for general analytic `f`
//! its error is controlled by the best degree-k polynomial approximation of
//! `f` on the numerical range, scaled by a small structure-dependent
//! constant. The unknowable best-approximation error enters the reported
//! bounds through a Chebyshev interpolation proxy: an estimate, not a
//! certificate.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::densefun::{
    cheb_approx, dense_kernel, enclosure, matrix_is_hermitian, EnclosureKind, ScalarFunction,
    SpectralEnclosure,
};
use crate::diagsets::{delta_set, u_set, Partition};
use crate::error::{Error, Result};
use crate::matstore::{DenseMatrix, DiagMatrix};
use crate::scalar::Scalar;

/// Universal constant in `||f(A)||_2 <= Q max |f|` over the numerical range:
/// 1 for Hermitian matrices, `1 + sqrt(2)` in general (the sharp constant
/// for analytic functions of arbitrary square matrices).
pub fn q_constant(hermitian: bool) -> f64 {
    if hermitian {
        1.0
    } else {
        1.0 + std::f64::consts::SQRT_2
    }
}

/// What an engine did and how much it believes its answer.
#[derive(Debug, Clone)]
pub struct ApproxReport {
    /// Polynomial degree the index sets were built for.
    pub k: usize,
    /// Numerical-range constant used in the reported bound.
    pub q: f64,
    /// Whether the input was treated as Hermitian.
    pub hermitian: bool,
    /// Number of independent dense solves (tiles / runs / rows).
    pub tiles: usize,
    /// Sizes of the extracted principal submatrices.
    pub submatrix_sizes: Vec<usize>,
    /// Upper-bound estimate on the error (`None` when no computable proxy
    /// exists for this function/enclosure combination).
    pub bound_estimate: Option<f64>,
}

impl ApproxReport {
    fn new(
        k: usize,
        hermitian: bool,
        tiles: usize,
        submatrix_sizes: Vec<usize>,
        bound_estimate: Option<f64>,
    ) -> Self {
        let q = q_constant(hermitian);
        if let Some(b) = bound_estimate {
            debug_assert!(b >= 0.0);
        }
        ApproxReport { k, q, hermitian, tiles, submatrix_sizes, bound_estimate }
    }

    pub fn max_submatrix(&self) -> usize {
        self.submatrix_sizes.iter().copied().max().unwrap_or(0)
    }
}

/// Computable stand-in for `min_{p in Π_k} max |f - p|` over the enclosure:
/// the Chebyshev interpolant error on an interval, a power-series tail on a
/// disk. `None` when neither applies.
pub fn best_poly_error_proxy(
    f: &ScalarFunction,
    enc: &SpectralEnclosure,
    k: usize,
) -> Option<f64> {
    match enc.kind {
        EnclosureKind::Interval { lo, hi } => {
            cheb_approx(|x| f.eval(x), lo, hi, k).ok().map(|c| c.error_estimate())
        }
        EnclosureKind::Disk { radius } => match f {
            ScalarFunction::Exp => {
                // tail of the exponential series at the disk radius
                let mut term = 1.0f64;
                for s in 1..=k {
                    term *= radius / s as f64;
                }
                let mut tail = 0.0f64;
                let mut s = k + 1;
                loop {
                    term *= radius / s as f64;
                    tail += term;
                    if term < 1e-300 || term < 1e-18 * tail || s > 20_000 {
                        break;
                    }
                    s += 1;
                }
                Some(tail)
            }
            ScalarFunction::Polynomial(c) => {
                let tail: f64 = c
                    .iter()
                    .enumerate()
                    .skip(k + 1)
                    .map(|(s, &cs)| cs.abs() * radius.powi(s as i32))
                    .sum();
                Some(tail)
            }
            _ => None,
        },
    }
}

/// Smallest degree whose proxy error drops under `tol / (Q (L+1))`, if any
/// degree up to `k_max` does.
pub fn select_k(
    f: &ScalarFunction,
    enc: &SpectralEnclosure,
    tol: f64,
    hermitian: bool,
    tiles: usize,
    k_max: usize,
) -> Option<usize> {
    let target = tol / (q_constant(hermitian) * (tiles as f64 + 1.0));
    (0..=k_max).find(|&k| best_poly_error_proxy(f, enc, k).is_some_and(|e| e <= target))
}

fn extract_and_apply<S: Scalar>(
    a: &DiagMatrix<S>,
    idx: &crate::diagsets::IndexSet,
    f: &ScalarFunction,
    hermitian: bool,
) -> Result<DenseMatrix<S>> {
    let b = a.extract(idx, idx)?;
    dense_kernel(&b, f, hermitian)
}

/// Approximate one entry `[f(A)]_{ij}` from the principal submatrix indexed
/// by Δ(i,j,k). Entries unreachable by any degree-k product chain are
/// approximated as zero.
pub fn element_approx<S: Scalar>(
    a: &DiagMatrix<S>,
    f: &ScalarFunction,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(S, ApproxReport)> {
    let nd = a.nd(0.0);
    let delta = delta_set(&nd, i, j, k)?.clipped();
    let hermitian = matrix_is_hermitian(a);
    let enc = enclosure(a);
    let proxy = best_poly_error_proxy(f, &enc, k);

    if !delta.contains(i) || !delta.contains(j) {
        // cannot happen on the main diagonal
        debug_assert!(i != j);
        let report =
            ApproxReport::new(k, hermitian, 0, vec![], proxy.map(|e| q_constant(hermitian) * e));
        return Ok((S::ZERO, report));
    }
    let fb = extract_and_apply(a, &delta, f, hermitian)?;
    let value = fb[(delta.pos(i)?, delta.pos(j)?)];
    let report = ApproxReport::new(
        k,
        hermitian,
        1,
        vec![delta.cardinality()],
        proxy.map(|e| 2.0 * q_constant(hermitian) * e),
    );
    Ok((value, report))
}

/// Approximate `trace(f(A))` by summing per-row principal-submatrix
/// approximations of the diagonal entries. The index set of row `i` is the
/// exact translate of the row-1 anchor.
pub fn trace_approx<S: Scalar>(
    a: &DiagMatrix<S>,
    f: &ScalarFunction,
    k: usize,
) -> Result<(S, ApproxReport)> {
    let n = a.n();
    let nd = a.nd(0.0);
    let hermitian = matrix_is_hermitian(a);
    let anchor = delta_set(&nd, 1, 1, k)?;
    let results: Vec<Result<(S, usize)>> = (1..=n)
        .into_par_iter()
        .map(|i| {
            let idx = anchor.shift(i as i64 - 1).clipped();
            let fb = extract_and_apply(a, &idx, f, hermitian)?;
            let p = idx.pos(i)?;
            Ok((fb[(p, p)], idx.cardinality()))
        })
        .collect();
    let mut total = S::ZERO;
    let mut sizes = Vec::with_capacity(n);
    for r in results {
        let (v, s) = r?;
        total += v;
        sizes.push(s);
    }
    let enc = enclosure(a);
    let proxy = best_poly_error_proxy(f, &enc, k);
    let report = ApproxReport::new(
        k,
        hermitian,
        n,
        sizes,
        proxy.map(|e| 2.0 * n as f64 * q_constant(hermitian) * e),
    );
    Ok((total, report))
}

/// Approximate the whole main diagonal of `f(A)`, batching consecutive rows
/// into shared dense solves. `batch = n` is one dense solve; `batch = 1`
/// degenerates to per-element extraction.
pub fn diag_approx<S: Scalar>(
    a: &DiagMatrix<S>,
    f: &ScalarFunction,
    k: usize,
    batch: usize,
) -> Result<(Vec<S>, ApproxReport)> {
    if batch == 0 {
        return Err(Error::InvalidPartition { tile: 0, reason: "batch must be >= 1" });
    }
    let n = a.n();
    let nd = a.nd(0.0);
    let hermitian = matrix_is_hermitian(a);
    let anchor = delta_set(&nd, 1, 1, k)?;

    let runs: Vec<(usize, usize)> = (1..=n)
        .step_by(batch)
        .map(|lo| (lo, (lo + batch - 1).min(n)))
        .collect();
    let results: Vec<Result<(Vec<S>, usize)>> = runs
        .par_iter()
        .map(|&(lo, hi)| {
            // union of shifted anchors over a contiguous run is a Minkowski
            // sum with the shift interval
            let spread = crate::diagsets::IntervalList::interval(lo as i64 - 1, hi as i64 - 1);
            let run_delta = crate::diagsets::DeltaSet::assemble(
                n,
                anchor_list(&anchor).minkowski(&spread),
            )
            .clipped();
            let fb = extract_and_apply(a, &run_delta, f, hermitian)?;
            let mut vals = Vec::with_capacity(hi - lo + 1);
            for i in lo..=hi {
                let p = run_delta.pos(i)?;
                vals.push(fb[(p, p)]);
            }
            Ok((vals, run_delta.cardinality()))
        })
        .collect();

    let mut out = Vec::with_capacity(n);
    let mut sizes = Vec::with_capacity(results.len());
    for r in results {
        let (vals, size) = r?;
        out.extend(vals);
        sizes.push(size);
    }
    let enc = enclosure(a);
    let proxy = best_poly_error_proxy(f, &enc, k);
    let tiles = sizes.len();
    let report = ApproxReport::new(
        k,
        hermitian,
        tiles,
        sizes,
        proxy.map(|e| 2.0 * q_constant(hermitian) * e),
    );
    Ok((out, report))
}

fn anchor_list(d: &crate::diagsets::DeltaSet) -> crate::diagsets::IntervalList {
    crate::diagsets::IntervalList::from_intervals(d.unclipped_intervals().iter().copied())
}

/// Approximate `f(A)` on the whole degree-k sparsity pattern, one dense solve
/// per partition tile. Entries outside the pattern are structurally zero in
/// the output.
pub fn funm_approx<S: Scalar>(
    a: &DiagMatrix<S>,
    f: &ScalarFunction,
    k: usize,
    partition: &Partition,
) -> Result<(DiagMatrix<S>, ApproxReport)> {
    if partition.k() != k {
        return Err(Error::InvalidPartition {
            tile: 0,
            reason: "partition was built for a different degree",
        });
    }
    let n = a.n();
    let nd = a.nd(0.0);
    let hermitian = matrix_is_hermitian(a);

    type TileResult<S> = Result<(Vec<(usize, usize, S)>, usize)>;
    let tile_results: Vec<TileResult<S>> = partition
        .tiles()
        .par_iter()
        .map(|tile| {
            let delta = partition.tile_delta(&nd, tile).clipped();
            let fb = extract_and_apply(a, &delta, f, hermitian)?;
            let mut entries = Vec::new();
            for (i, j) in tile.pairs(n) {
                if delta.contains(i) && delta.contains(j) {
                    entries.push((i, j, fb[(delta.pos(i)?, delta.pos(j)?)]));
                }
            }
            Ok((entries, delta.cardinality()))
        })
        .collect();

    let mut out = DiagMatrix::<S>::zeros(n);
    let mut sizes = Vec::with_capacity(partition.len());
    for r in tile_results {
        let (entries, size) = r?;
        for (i, j, v) in entries {
            out.set(i, j, v);
        }
        sizes.push(size);
    }
    debug_assert!(out.nd(0.0).is_subset_of(&u_set(&nd, k)));
    let enc = enclosure(a);
    let proxy = best_poly_error_proxy(f, &enc, k);
    let l = partition.len();
    let report = ApproxReport::new(
        k,
        hermitian,
        l,
        sizes,
        proxy.map(|e| q_constant(hermitian) * (l as f64 + 1.0) * e),
    );
    Ok((out, report))
}

/// Exponential decay bound for the diagonals of `f(A)` when the numerical
/// range sits inside the origin-centered disk of radius `norm2`: diagonals
/// unreachable by degree-(k-1) polynomials are bounded by
/// `(2 tau / (tau - 1)) tau^{-k} max_{|z| = tau} |f(norm2 z)|`.
pub fn decay_bound(norm2: f64, tau: f64, k: usize, f: &ScalarFunction) -> Result<f64> {
    if tau.is_nan() || tau <= 1.0 {
        return Err(Error::TauOutOfRange { tau });
    }
    const SAMPLES: usize = 256;
    let mut max_f = 0.0f64;
    for s in 0..SAMPLES {
        let theta = 2.0 * std::f64::consts::PI * s as f64 / SAMPLES as f64;
        let z = Complex64::from_polar(norm2 * tau, theta);
        let v = f.eval_complex(z)?.norm();
        if v > max_f {
            max_f = v;
        }
    }
    Ok(2.0 * tau / (tau - 1.0) * tau.powi(-(k as i32)) * max_f)
}
