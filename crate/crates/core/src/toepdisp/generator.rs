//! Displacement generators for Toeplitz matrix powers and polynomials.
//!
//! The displacement `∇(A) = A - Z A Z*` (down-right shift) of a Toeplitz
//! matrix has rank at most 2, and powers `T^s` stay displacement-rank
//! `<= 2s`. Their generators come from repeated applications of
//! `P = (Z - I) T (Z - I)^{-1}`, where `(Z - I)^{-1}` is a cumulative sum and
//! `T` multiplies through the FFT. The textbook update emits redundant
//! columns proportional to earlier unit-vector images; those are merged into
//! their twins here, so the emitted generator for `T^s` has width exactly
//! `2s` by construction.

use super::fft::ToeplitzProduct;
use crate::matstore::{DenseMatrix, ToeplitzMatrix};
use crate::scalar::Scalar;

/// A factored displacement: `∇(A) = G B*` with `G, B` of shape `n x width`.
#[derive(Debug, Clone)]
pub struct GeneratorPair<S: Scalar> {
    pub g: DenseMatrix<S>,
    pub b: DenseMatrix<S>,
}

impl<S: Scalar> GeneratorPair<S> {
    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn width(&self) -> usize {
        self.g.cols()
    }

    /// Entry `(i, j)` of `G B*`, 1-based.
    pub fn displacement_entry(&self, i: usize, j: usize) -> S {
        self.g
            .row(i - 1)
            .iter()
            .zip(self.b.row(j - 1))
            .map(|(&gv, &bv)| gv * bv.conj())
            .sum()
    }

    /// Rows of `G` (resp. `B`) whose norm exceeds `tol` times the largest row
    /// norm. A zero row of `G` forces the whole displacement row to zero, so
    /// these supports give a structural superset of the nonzero pattern.
    pub fn row_supports(&self, tol: f64) -> (SupportRuns, SupportRuns) {
        (row_support(&self.g, tol), row_support(&self.b, tol))
    }
}

/// Contiguous 1-based row ranges with above-threshold norms.
pub type SupportRuns = Vec<(i64, i64)>;

fn row_support<S: Scalar>(m: &DenseMatrix<S>, tol: f64) -> SupportRuns {
    let norms: Vec<f64> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| v.abs()).fold(0.0, f64::max))
        .collect();
    let scale = norms.iter().copied().fold(0.0, f64::max);
    let thresh = tol * scale;
    let mut runs = Vec::new();
    let mut start: Option<usize> = None;
    for (i, &nv) in norms.iter().enumerate() {
        if nv > thresh {
            if start.is_none() {
                start = Some(i + 1);
            }
        } else if let Some(s) = start.take() {
            runs.push((s as i64, i as i64));
        }
    }
    if let Some(s) = start {
        runs.push((s as i64, norms.len() as i64));
    }
    runs
}

/// `A - Z A Z*`: subtract the down-right shifted copy.
pub fn displacement<S: Scalar>(a: &DenseMatrix<S>) -> DenseMatrix<S> {
    let n = a.rows();
    assert!(a.is_square());
    DenseMatrix::from_fn(n, n, |i, j| {
        if i >= 1 && j >= 1 {
            a[(i, j)] - a[(i - 1, j - 1)]
        } else {
            a[(i, j)]
        }
    })
}

/// Width-2 generator of a Toeplitz matrix itself:
/// `∇(T) = e_1 b* + g e_1*` with `b` the conjugated first row and `g` the
/// first column minus its head.
pub fn toeplitz_generator<S: Scalar>(t: &ToeplitzMatrix<S>) -> GeneratorPair<S> {
    let n = t.n();
    let mut g = DenseMatrix::zeros(n, 2);
    let mut b = DenseMatrix::zeros(n, 2);
    g[(0, 0)] = S::ONE;
    for i in 1..n {
        g[(i, 1)] = t.first_col()[i];
    }
    for j in 0..n {
        b[(j, 0)] = t.first_row()[j].conj();
    }
    b[(0, 1)] = S::ONE;
    GeneratorPair { g, b }
}

/// `(Z - I)^{-1} v`: negative cumulative sums.
fn shifted_inverse_apply<S: Scalar>(v: &[S]) -> Vec<S> {
    let mut acc = S::ZERO;
    v.iter()
        .map(|&x| {
            acc += x;
            -acc
        })
        .collect()
}

/// `(Z - I) y`: first entry negated, then first differences.
fn shifted_apply<S: Scalar>(y: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(y.len());
    out.push(-y[0]);
    for i in 1..y.len() {
        out.push(y[i - 1] - y[i]);
    }
    out
}

/// One application of `P = (Z - I) T (Z - I)^{-1}`.
fn p_apply<S: Scalar>(t: &ToeplitzProduct, v: &[S]) -> Vec<S> {
    shifted_apply(&t.apply(&shifted_inverse_apply(v)))
}

/// Precomputed `P`-power images that generator construction draws from.
struct PowerStacks<S: Scalar> {
    /// `P_G^t e_1` and `P_G^t g` for `t = 0..k`
    pg_e1: Vec<Vec<S>>,
    pg_g: Vec<Vec<S>>,
    /// `P_B^t b` and `P_B^t e_1`
    pb_b: Vec<Vec<S>>,
    pb_e1: Vec<Vec<S>>,
}

fn build_stacks<S: Scalar>(t: &ToeplitzMatrix<S>, k: usize) -> PowerStacks<S> {
    let n = t.n();
    let fwd = ToeplitzProduct::new(t);
    let adj_matrix = ToeplitzMatrix::new(
        t.first_row().iter().map(|&x| x.conj()).collect(),
        t.first_col().iter().map(|&x| x.conj()).collect(),
    )
    .expect("adjoint corner agrees");
    let adj = ToeplitzProduct::new(&adj_matrix);

    let base = toeplitz_generator(t);
    let mut e1 = vec![S::ZERO; n];
    e1[0] = S::ONE;
    let g0: Vec<S> = (0..n).map(|i| base.g[(i, 1)]).collect();
    let b0: Vec<S> = (0..n).map(|i| base.b[(i, 0)]).collect();

    let mut pg_e1 = vec![e1.clone()];
    let mut pg_g = vec![g0];
    let mut pb_b = vec![b0];
    let mut pb_e1 = vec![e1];
    for _ in 1..=k {
        pg_e1.push(p_apply(&fwd, pg_e1.last().unwrap()));
        pg_g.push(p_apply(&fwd, pg_g.last().unwrap()));
        pb_b.push(p_apply(&adj, pb_b.last().unwrap()));
        pb_e1.push(p_apply(&adj, pb_e1.last().unwrap()));
    }
    PowerStacks { pg_e1, pg_g, pb_b, pb_e1 }
}

fn pair_from_columns<S: Scalar>(g_cols: Vec<Vec<S>>, b_cols: Vec<Vec<S>>) -> GeneratorPair<S> {
    debug_assert_eq!(g_cols.len(), b_cols.len());
    let n = g_cols.first().map_or(0, |c| c.len());
    let w = g_cols.len();
    let g = DenseMatrix::from_fn(n, w, |i, j| g_cols[j][i]);
    let b = DenseMatrix::from_fn(n, w, |i, j| b_cols[j][i]);
    GeneratorPair { g, b }
}

fn generator_for_power<S: Scalar>(stacks: &PowerStacks<S>, s: usize) -> GeneratorPair<S> {
    debug_assert!(s >= 1);
    let mut g_cols = Vec::with_capacity(2 * s);
    let mut b_cols = Vec::with_capacity(2 * s);
    // unit-vector images, with the textbook's trailing corrections folded in
    for beta in 0..s {
        g_cols.push(stacks.pg_e1[beta].clone());
        let mut col = stacks.pb_b[s - 1 - beta].clone();
        if beta >= 1 {
            for (c, e) in col.iter_mut().zip(&stacks.pb_e1[s - beta]) {
                *c -= *e;
            }
        }
        b_cols.push(col);
    }
    // first-column images
    for t in 0..s {
        g_cols.push(stacks.pg_g[t].clone());
        b_cols.push(stacks.pb_e1[s - 1 - t].clone());
    }
    pair_from_columns(g_cols, b_cols)
}

/// Generators for `T, T², ..., T^k`, each of width exactly `2s`.
pub fn power_generators<S: Scalar>(t: &ToeplitzMatrix<S>, k: usize) -> Vec<GeneratorPair<S>> {
    assert!(k >= 1);
    let stacks = build_stacks(t, k);
    (1..=k).map(|s| generator_for_power(&stacks, s)).collect()
}

/// Generator for `p(T) = sum_s coeffs[s] T^s`: the block concatenation of the
/// power generators with the coefficients folded into the `G` side. Zero
/// coefficients contribute no columns.
pub fn poly_generator<S: Scalar>(t: &ToeplitzMatrix<S>, coeffs: &[f64]) -> GeneratorPair<S> {
    let n = t.n();
    let deg = coeffs.len().saturating_sub(1);
    let stacks = if deg >= 1 { Some(build_stacks(t, deg)) } else { None };
    let mut g_cols: Vec<Vec<S>> = Vec::new();
    let mut b_cols: Vec<Vec<S>> = Vec::new();
    if !coeffs.is_empty() && coeffs[0] != 0.0 {
        let mut e1 = vec![S::ZERO; n];
        e1[0] = S::from_f64(coeffs[0]);
        g_cols.push(e1.clone());
        e1[0] = S::ONE;
        b_cols.push(e1);
    }
    for (s, &c) in coeffs.iter().enumerate().skip(1) {
        if c == 0.0 {
            continue;
        }
        let pair = generator_for_power(stacks.as_ref().unwrap(), s);
        let factor = S::from_f64(c);
        for w in 0..pair.width() {
            g_cols.push((0..n).map(|i| pair.g[(i, w)] * factor).collect());
            b_cols.push((0..n).map(|i| pair.b[(i, w)]).collect());
        }
    }
    if g_cols.is_empty() {
        return GeneratorPair { g: DenseMatrix::zeros(n, 0), b: DenseMatrix::zeros(n, 0) };
    }
    pair_from_columns(g_cols, b_cols)
}

/// Column-pivoted Householder QR. Returns (Q thin, R thin, column permutation,
/// numerical rank at `tol` relative to the largest pivot).
fn cpqr<S: Scalar>(a: &DenseMatrix<S>, tol: f64) -> (DenseMatrix<S>, DenseMatrix<S>, Vec<usize>, usize) {
    let n = a.rows();
    let w = a.cols();
    let mut r = a.clone();
    let mut perm: Vec<usize> = (0..w).collect();
    let mut reflectors: Vec<Vec<S>> = Vec::new();
    let mut col_norms: Vec<f64> = (0..w)
        .map(|j| (0..n).map(|i| r[(i, j)].abs().powi(2)).sum::<f64>())
        .collect();
    let kmax = n.min(w);
    let mut rank = 0usize;
    let mut first_pivot = 0.0f64;
    for k in 0..kmax {
        // pivot: largest remaining column
        let (piv, &piv_norm) = col_norms
            .iter()
            .enumerate()
            .skip(k)
            .max_by(|x, y| x.1.partial_cmp(y.1).unwrap())
            .unwrap();
        if k == 0 {
            first_pivot = piv_norm.sqrt();
        }
        if piv_norm.sqrt() <= tol * first_pivot.max(f64::MIN_POSITIVE) {
            break;
        }
        rank += 1;
        if piv != k {
            perm.swap(piv, k);
            col_norms.swap(piv, k);
            for i in 0..n {
                let tmp = r[(i, piv)];
                r[(i, piv)] = r[(i, k)];
                r[(i, k)] = tmp;
            }
        }
        // Householder vector for column k below row k
        let alpha: f64 = (k..n).map(|i| r[(i, k)].abs().powi(2)).sum::<f64>().sqrt();
        if alpha == 0.0 {
            reflectors.push(vec![S::ZERO; n]);
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.abs() == 0.0 { S::ONE } else { x0 * S::from_f64(1.0 / x0.abs()) };
        let alpha_s = phase * S::from_f64(alpha);
        let mut v = vec![S::ZERO; n];
        for i in k..n {
            v[i] = r[(i, k)];
        }
        v[k] += alpha_s;
        let vnorm2: f64 = v.iter().map(|x| x.abs().powi(2)).sum();
        if vnorm2 > 0.0 {
            let inv = S::from_f64(2.0 / vnorm2);
            for j in k..w {
                let dot: S = (k..n).map(|i| v[i].conj() * r[(i, j)]).sum();
                let scale = dot * inv;
                for i in k..n {
                    let delta = v[i] * scale;
                    r[(i, j)] -= delta;
                }
            }
        }
        reflectors.push(v);
        for (j, cn) in col_norms.iter_mut().enumerate().skip(k + 1) {
            *cn = (k + 1..n).map(|i| r[(i, j)].abs().powi(2)).sum();
        }
    }
    // thin Q: apply reflectors to the first `rank` identity columns
    let mut q = DenseMatrix::zeros(n, rank);
    for j in 0..rank {
        q[(j, j)] = S::ONE;
    }
    for (k, v) in reflectors.iter().enumerate().take(rank).rev() {
        let vnorm2: f64 = v.iter().map(|x| x.abs().powi(2)).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let inv = S::from_f64(2.0 / vnorm2);
        for j in 0..rank {
            let dot: S = (k..n).map(|i| v[i].conj() * q[(i, j)]).sum();
            let scale = dot * inv;
            for i in k..n {
                let delta = v[i] * scale;
                q[(i, j)] -= delta;
            }
        }
    }
    let r_thin = DenseMatrix::from_fn(rank, w, |i, j| if j >= i { r[(i, j)] } else { S::ZERO });
    (q, r_thin, perm, rank)
}

/// Compress a generator pair to its numerical displacement rank via two
/// column-pivoted QR passes. The represented product `G B*` is preserved to
/// the given relative tolerance.
pub fn compress<S: Scalar>(pair: &GeneratorPair<S>, tol: f64) -> GeneratorPair<S> {
    let n = pair.n();
    let w = pair.width();
    if w == 0 {
        return pair.clone();
    }
    // G = Q1 R1 P1ᵀ  =>  G B* = Q1 (B P1 R1*)*
    let (q1, r1, p1, rank1) = cpqr(&pair.g, tol);
    let mut c = DenseMatrix::<S>::zeros(n, rank1);
    for i in 0..n {
        for j in 0..rank1 {
            let mut acc = S::ZERO;
            for l in j..w {
                // (B P1)_{i,l} * conj(R1_{j,l})
                acc += pair.b[(i, p1[l])] * r1[(j, l)].conj();
            }
            c[(i, j)] = acc;
        }
    }
    // C = Q2 R2 P2ᵀ  =>  Q1 C* = (Q1 P2 R2*) Q2*
    let (q2, r2, p2, rank2) = cpqr(&c, tol);
    let mut g_new = DenseMatrix::<S>::zeros(n, rank2);
    for i in 0..n {
        for j in 0..rank2 {
            let mut acc = S::ZERO;
            for l in j..rank1 {
                // (Q1 P2)_{i,l} * conj(R2_{j,l})
                acc += q1[(i, p2[l])] * r2[(j, l)].conj();
            }
            g_new[(i, j)] = acc;
        }
    }
    GeneratorPair { g: g_new, b: q2 }
}

/// Rebuild the full matrix from its generator: evaluate the displacement
/// `D = G B*` and undo the shift by the telescoping recurrence
/// `A_{pq} = D_{pq} + A_{p-1,q-1}`. Equivalent to summing the triangular
/// Toeplitz products `L(g_j) U(b_j*)` column by column.
pub fn reconstruct<S: Scalar>(pair: &GeneratorPair<S>) -> DenseMatrix<S> {
    let n = pair.n();
    let mut out = DenseMatrix::<S>::zeros(n, n);
    for p in 0..n {
        let grow = pair.g.row(p);
        for q in 0..n {
            let brow = pair.b.row(q);
            let mut d = S::ZERO;
            for (gv, bv) in grow.iter().zip(brow) {
                d += *gv * bv.conj();
            }
            let inherit = if p >= 1 && q >= 1 { out[(p - 1, q - 1)] } else { S::ZERO };
            out[(p, q)] = d + inherit;
        }
    }
    out
}
