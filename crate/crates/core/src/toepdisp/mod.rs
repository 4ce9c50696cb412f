//! Displacement-rank machinery for Toeplitz matrices and the specialized
//! approximation that exploits it.
//!
//! The function of a Toeplitz matrix inherits near-Toeplitz structure: the
//! displacement of any degree-k polynomial of `T` is supported on a thin
//! border, so along every retained diagonal the value of `f(T)` is (up to the
//! polynomial approximation error) constant across the runs where the
//! displacement vanishes. One dense solve anchored at the displacement's
//! nonzero pattern plus one anchored at the run heads then covers the whole
//! matrix.

pub mod fft;
pub mod generator;

use rayon::prelude::*;

use crate::approx::{best_poly_error_proxy, q_constant, ApproxReport};
use crate::densefun::{
    cheb_approx, dense_kernel, EnclosureSource, ScalarFunction, SpectralEnclosure,
};
use crate::diagsets::{u_set, DiagSet, IndexSet, IntervalList};
use crate::error::{Error, Result};
use crate::matstore::{DiagMatrix, ToeplitzMatrix};
use crate::scalar::Scalar;

pub use fft::{fft, toeplitz_matvec, ToeplitzProduct};
pub use generator::{
    compress, displacement, poly_generator, power_generators, reconstruct, toeplitz_generator,
    GeneratorPair,
};

/// Relative threshold separating structural zeros of a displacement from the
/// floating-point residue of exact cancellations.
pub const STRUCTURAL_ZERO_TOL: f64 = 1e-13;

/// Relative threshold for generator row-support detection.
const ROW_SUPPORT_TOL: f64 = 1e-12;

/// A maximal run of structurally zero displacement entries along one
/// diagonal: entries `(row + z, col + z)` for `0 <= z < len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroRun {
    pub row: usize,
    pub col: usize,
    pub len: usize,
}

/// Per-diagonal partition of the structurally zero displacement entries into
/// maximal contiguous runs. Run heads serve as anchors: the matrix-function
/// value at the head is shared by every entry of its run.
#[derive(Debug, Clone)]
pub struct ZeroRunPartition {
    pub threshold: f64,
    /// `(diagonal, maximal runs on it)`, in diagonal order.
    pub diagonals: Vec<(i64, Vec<ZeroRun>)>,
}

impl ZeroRunPartition {
    pub fn total_runs(&self) -> usize {
        self.diagonals.iter().map(|(_, v)| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_runs() == 0
    }
}

/// Scan the displacement product `G B*` along the diagonals of `u` and
/// return the maximal runs of entries below `STRUCTURAL_ZERO_TOL` relative
/// to the largest entry seen on those diagonals.
pub fn zero_runs<S: Scalar>(pair: &GeneratorPair<S>, u: &DiagSet) -> ZeroRunPartition {
    let n = pair.n();
    // evaluate |G B*| on the pattern diagonals only
    let mut per_diag: Vec<(i64, Vec<f64>)> = Vec::new();
    let mut scale = 0.0f64;
    for r in u.iter() {
        let lo = 1.max(1 - r) as usize;
        let hi = (n as i64).min(n as i64 - r) as usize;
        let mut vals = Vec::with_capacity(hi + 1 - lo);
        for i in lo..=hi {
            let v = pair.displacement_entry(i, (i as i64 + r) as usize).abs();
            if v > scale {
                scale = v;
            }
            vals.push(v);
        }
        per_diag.push((r, vals));
    }
    let threshold = STRUCTURAL_ZERO_TOL * scale;
    let mut diagonals = Vec::with_capacity(per_diag.len());
    for (r, vals) in per_diag {
        let lo = 1.max(1 - r) as usize;
        let mut runs = Vec::new();
        let mut head: Option<usize> = None;
        for (off, &v) in vals.iter().enumerate() {
            if v <= threshold {
                if head.is_none() {
                    head = Some(lo + off);
                }
            } else if let Some(h) = head.take() {
                runs.push(ZeroRun { row: h, col: (h as i64 + r) as usize, len: lo + off - h });
            }
        }
        if let Some(h) = head {
            runs.push(ZeroRun {
                row: h,
                col: (h as i64 + r) as usize,
                len: lo + vals.len() - h,
            });
        }
        diagonals.push((r, runs));
    }
    ZeroRunPartition { threshold, diagonals }
}

fn toeplitz_hermitian<S: Scalar>(t: &ToeplitzMatrix<S>) -> bool {
    let scale = t
        .first_col()
        .iter()
        .chain(t.first_row())
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    t.is_hermitian(crate::densefun::HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE))
}

fn toeplitz_enclosure<S: Scalar>(t: &ToeplitzMatrix<S>, hermitian: bool) -> SpectralEnclosure {
    let off_sum: f64 = t.first_col().iter().skip(1).map(|v| v.abs()).sum::<f64>()
        + t.first_row().iter().skip(1).map(|v| v.abs()).sum::<f64>();
    if hermitian {
        let center = t.first_col()[0].re();
        SpectralEnclosure::interval(center - off_sum, center + off_sum, EnclosureSource::Gershgorin)
    } else {
        let radius = t.first_col()[0].abs() + off_sum;
        SpectralEnclosure::disk(radius, EnclosureSource::NormBound)
    }
}

/// The degree-k structure polynomial used to expose the displacement's zero
/// pattern, as monomial coefficients paired with the (shifted/scaled)
/// Toeplitz matrix they apply to.
fn structure_polynomial<S: Scalar>(
    t: &ToeplitzMatrix<S>,
    f: &ScalarFunction,
    k: usize,
    hermitian: bool,
    enc: &SpectralEnclosure,
) -> Result<(ToeplitzMatrix<S>, Vec<f64>)> {
    if let Some(c) = f.as_polynomial() {
        if c.len() <= k + 1 {
            return Ok((t.clone(), c.to_vec()));
        }
    }
    match enc.kind {
        crate::densefun::EnclosureKind::Interval { lo, hi } => {
            let cheb = cheb_approx(|x| f.eval(x), lo, hi, k)?;
            let coeffs = cheb.monomial_in_mapped_variable();
            let center = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            let mapped = t
                .shift_diagonal(S::from_f64(center))
                .scale(S::from_f64(1.0 / half.max(f64::MIN_POSITIVE)));
            Ok((mapped, coeffs))
        }
        crate::densefun::EnclosureKind::Disk { radius } => match f {
            ScalarFunction::Exp => {
                let rho = radius.max(f64::MIN_POSITIVE);
                let scaled = t.scale(S::from_f64(1.0 / rho));
                let mut coeffs = Vec::with_capacity(k + 1);
                let mut c = 1.0f64;
                coeffs.push(c);
                for s in 1..=k {
                    c *= rho / s as f64;
                    coeffs.push(c);
                }
                Ok((scaled, coeffs))
            }
            ScalarFunction::Polynomial(c) => {
                // degree above k: structural truncation
                Ok((t.clone(), c[..=k.min(c.len() - 1)].to_vec()))
            }
            _ => Err(Error::KernelUnsupported {
                function: f.name(),
                class: if hermitian { "Hermitian Toeplitz" } else { "Toeplitz" }.into(),
            }),
        },
    }
}

/// Approximate `f(T)` for a Toeplitz matrix through its displacement
/// structure: two dense solves (one anchored at the displacement's nonzero
/// border, one at the zero-run heads), then value sharing along the runs.
/// Output is restricted to the degree-k diagonal pattern.
///
/// `size_cap`: if either index set outgrows this, the structure is too dense
/// for the method to pay off and a dense kernel is advised instead.
pub fn toeplitz_funm<S: Scalar>(
    t: &ToeplitzMatrix<S>,
    f: &ScalarFunction,
    k: usize,
    size_cap: Option<usize>,
) -> Result<(DiagMatrix<S>, ApproxReport)> {
    let n = t.n();
    let nd = t.nd(0.0);
    let hermitian = toeplitz_hermitian(t);
    let enc = toeplitz_enclosure(t, hermitian);

    // scalar multiples of the identity evaluate pointwise
    if nd.is_subset_of(&DiagSet::main_diagonal(n)) {
        let c = t.first_col()[0];
        let fc = if S::IS_REAL {
            S::from_f64(f.eval(c.re())?)
        } else {
            S::from_complex(f.eval_complex(c.to_complex())?)
        };
        let mut out = DiagMatrix::zeros(n);
        out.set_diag(0, vec![fc; n])?;
        let report = ApproxReport {
            k,
            q: q_constant(hermitian),
            hermitian,
            tiles: 0,
            submatrix_sizes: vec![],
            bound_estimate: Some(0.0),
        };
        return Ok((out, report));
    }

    let u = u_set(&nd, k);
    let (mapped, coeffs) = structure_polynomial(t, f, k, hermitian, &enc)?;
    let pair = poly_generator(&mapped, &coeffs);
    let (g_runs, b_runs) = pair.row_supports(ROW_SUPPORT_TOL);
    let support_g = IntervalList::from_intervals(g_runs);
    let support_b = IntervalList::from_intervals(b_runs);

    // Per diagonal r of the pattern: nonzero displacement rows are those in
    // the row support of G whose partner row sits in the support of B; the
    // complement splits into maximal zero runs. The extraction sets use the
    // pattern estimate (i + U) ∩ (j - U) = i + (U ∩ (r - U)), unioned with
    // interval arithmetic.
    struct DiagPlan {
        r: i64,
        nonzero: IntervalList,
        zero: IntervalList,
    }
    let mut plans = Vec::new();
    let mut delta_border = IntervalList::empty();
    let mut delta_anchors = IntervalList::empty();
    for r in u.iter() {
        let row_lo = 1.max(1 - r);
        let row_hi = (n as i64).min(n as i64 - r);
        let range = IntervalList::interval(row_lo, row_hi);
        let nonzero = support_g.intersect(&support_b.shift(-r)).intersect(&range);
        let zero = nonzero.complement_within(row_lo, row_hi);
        let reach = u.as_list().intersect(&u.as_list().reflect().shift(r));
        for &(lo, hi) in nonzero.runs() {
            delta_border = delta_border.union(&reach.minkowski(&IntervalList::interval(lo, hi)));
        }
        for &(lo, _) in zero.runs() {
            delta_anchors = delta_anchors.union(&reach.shift(lo));
        }
        plans.push(DiagPlan { r, nonzero, zero });
    }

    let border_idx = IndexSet::from_list(n, delta_border);
    let anchor_idx = IndexSet::from_list(n, delta_anchors);
    if let Some(cap) = size_cap {
        let size = border_idx.cardinality().max(anchor_idx.cardinality());
        if size > cap {
            return Err(Error::DenseFallbackAdvised { size, cap });
        }
    }

    // the two dense solves can run concurrently
    let solves: Vec<Result<Option<crate::matstore::DenseMatrix<S>>>> = [&border_idx, &anchor_idx]
        .par_iter()
        .map(|idx| {
            if idx.is_empty() {
                return Ok(None);
            }
            let b = t.extract(idx, idx)?;
            dense_kernel(&b, f, hermitian).map(Some)
        })
        .collect();
    let mut solved = solves.into_iter();
    let f_border = solved.next().unwrap()?;
    let f_anchor = solved.next().unwrap()?;

    let mut out = DiagMatrix::<S>::zeros(n);
    for plan in &plans {
        let r = plan.r;
        let len = DiagMatrix::<S>::diag_len(n, r);
        let mut vals = vec![S::ZERO; len];
        let offset = 1.max(1 - r);
        for &(lo, hi) in plan.nonzero.runs() {
            let fb = f_border.as_ref().expect("nonzero rows imply a border solve");
            for i in lo..=hi {
                let j = (i + r) as usize;
                vals[(i - offset) as usize] =
                    fb[(border_idx.pos(i as usize)?, border_idx.pos(j)?)];
            }
        }
        for &(lo, hi) in plan.zero.runs() {
            let fa = f_anchor.as_ref().expect("zero runs imply an anchor solve");
            let j = (lo + r) as usize;
            let v = fa[(anchor_idx.pos(lo as usize)?, anchor_idx.pos(j)?)];
            for i in lo..=hi {
                vals[(i - offset) as usize] = v;
            }
        }
        out.set_diag(r, vals)?;
    }

    let proxy = best_poly_error_proxy(f, &enc, k);
    let l = u.cardinality();
    let report = ApproxReport {
        k,
        q: q_constant(hermitian),
        hermitian,
        tiles: 2,
        submatrix_sizes: vec![border_idx.cardinality(), anchor_idx.cardinality()],
        bound_estimate: proxy.map(|e| 4.0 * l as f64 * q_constant(hermitian) * e),
    };
    Ok((out, report))
}
