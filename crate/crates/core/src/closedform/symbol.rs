//! Real symmetric Laurent symbols and the spectral data extracted from them.
//!
//! A symbol `a(x) = a_0 + Σ_{k=1..r} a_k (x^k + x^{-k})` generates the family
//! of symmetric banded Toeplitz matrices with `a_k` on the ±k-th diagonals.
//! Its generating function `g(x) = a(e^{ix})` is real; under the standing
//! monotonicity assumption the roots of `a(x) - λ` split into a unit-circle
//! pair and `r-1` reciprocal pairs, and the outside-the-circle roots
//! `u_v(λ)` drive every closed-form element formula.

use num_complex::Complex64;

use super::quadrature::level_nodes;
use crate::densefun::{poly_roots, ScalarFunction};
use crate::error::{Error, Result};
use crate::matstore::ToeplitzMatrix;

/// Modulus window around 1 inside which a root is treated as the unit pair.
const UNIT_ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSymbol {
    /// `a_0..a_r`; the symmetric extension `a_{-k} = a_k` is implied.
    coeffs: Vec<f64>,
}

impl LaurentSymbol {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidSymbol("need at least a_0 and a_1"));
        }
        if !coeffs.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidSymbol("coefficients must be finite"));
        }
        if *coeffs.last().unwrap() == 0.0 {
            return Err(Error::InvalidSymbol("leading coefficient a_r must be nonzero"));
        }
        Ok(LaurentSymbol { coeffs })
    }

    /// Parse the CLI syntax "a0,a1,...,ar".
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs: Vec<f64> = text
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidSymbol("cannot parse coefficient list"))?;
        Self::new(coeffs)
    }

    /// Half-bandwidth `r`.
    pub fn half_bandwidth(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `g(x) = a_0 + 2 Σ a_k cos(kx)`.
    pub fn g(&self, x: f64) -> f64 {
        self.coeffs[0]
            + 2.0
                * self
                    .coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, &c)| c * (k as f64 * x).cos())
                    .sum::<f64>()
    }

    /// `g'(x) = -2 Σ k a_k sin(kx)`.
    pub fn g_prime(&self, x: f64) -> f64 {
        -2.0 * self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c * (k as f64 * x).sin())
            .sum::<f64>()
    }

    /// The symmetric banded Toeplitz matrix of size n generated by this
    /// symbol.
    pub fn toeplitz(&self, n: usize) -> ToeplitzMatrix<f64> {
        let mut col = vec![0.0; n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k < n {
                col[k] = c;
            }
        }
        ToeplitzMatrix::symmetric(col).expect("symmetric corner agrees")
    }

    /// Monomial coefficients of `x^r (a(x) - λ)`, degree `2r`.
    fn shifted_poly(&self, lambda: f64) -> Vec<f64> {
        let r = self.half_bandwidth();
        let mut c = vec![0.0; 2 * r + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            c[r + k] += a;
            c[r - k] += if k == 0 { -lambda } else { a };
        }
        // note: k = 0 contributed `a_0` at r + 0 and `-λ` at r - 0
        c
    }

    /// The `r - 1` roots of `a(x) = λ` outside the unit circle, sorted by
    /// (modulus, argument). The unit-circle pair is discarded.
    pub fn outer_roots(&self, lambda: f64) -> Result<Vec<Complex64>> {
        let r = self.half_bandwidth();
        let roots = poly_roots(&self.shifted_poly(lambda))?;
        let mut outer: Vec<Complex64> = roots
            .into_iter()
            .filter(|z| z.norm() > 1.0 + UNIT_ROOT_TOL)
            .collect();
        outer.sort_by(|a, b| {
            (a.norm(), a.arg())
                .partial_cmp(&(b.norm(), b.arg()))
                .unwrap()
        });
        if outer.len() != r - 1 {
            return Err(Error::RootsNearUnitCircle {
                min_gap: outer.iter().map(|z| z.norm() - 1.0).fold(f64::INFINITY, f64::min),
            });
        }
        Ok(outer)
    }
}

/// Everything the closed-form element formulas need at one quadrature node.
#[derive(Debug, Clone)]
pub struct NodeData {
    pub x: f64,
    /// `λ = g(x)`
    pub lambda: f64,
    /// `f(g(x))`
    pub f_value: f64,
    /// outside-circle roots `u_v(λ)`
    pub roots: Vec<Complex64>,
    /// phase correction `Θ(x)`, continuous with `Θ(0) = 0`
    pub theta: f64,
    /// per-root weights `Q_v(x)`
    pub q: Vec<Complex64>,
}

impl NodeData {
    /// `F_s(x) = -Σ_v Q_v(x) / u_v(g(x))^s`, real by conjugate symmetry.
    pub fn f_correction(&self, s: usize) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (qv, uv) in self.q.iter().zip(&self.roots) {
            acc -= qv / uv.powi(s as i32);
        }
        acc.re
    }

    /// `F_s` for all `s = 1..=s_max`, sharing the running powers.
    pub fn f_correction_table(&self, s_max: usize) -> Vec<f64> {
        let mut inv: Vec<Complex64> = self.roots.iter().map(|u| 1.0 / u).collect();
        let mut out = Vec::with_capacity(s_max);
        for _ in 1..=s_max {
            let mut acc = Complex64::new(0.0, 0.0);
            for (qv, p) in self.q.iter().zip(&inv) {
                acc -= qv * p;
            }
            out.push(acc.re);
            for (p, u) in inv.iter_mut().zip(&self.roots) {
                *p /= u;
            }
        }
        out
    }
}

/// Spectral data of a symbol under a fixed scalar function: root evaluators,
/// decay margin, weight bounds, and the monotonicity certificate.
#[derive(Debug, Clone)]
pub struct SymbolAnalysis {
    symbol: LaurentSymbol,
    /// smallest log-modulus of the outer roots over the sampled spectrum
    pub delta_0: f64,
    /// largest `|Q_v|` over the sampled spectrum
    pub q_max: f64,
    /// largest `|f(g(x))|` over the sampled spectrum
    pub f_max: f64,
    /// `[g(0), g(π)]`
    pub lambda_range: (f64, f64),
    /// grid size used for the certificate and the extrema above
    pub grid: usize,
}

impl SymbolAnalysis {
    pub fn symbol(&self) -> &LaurentSymbol {
        &self.symbol
    }

    /// Evaluate all node quantities at an interior point `x ∈ (0, π)`.
    pub fn node(&self, f: &ScalarFunction, x: f64) -> Result<NodeData> {
        let lambda = self.symbol.g(x);
        let f_value = f.eval(lambda)?;
        let r = self.symbol.half_bandwidth();
        if r == 1 {
            return Ok(NodeData { x, lambda, f_value, roots: vec![], theta: 0.0, q: vec![] });
        }
        let roots = self.symbol.outer_roots(lambda)?;
        let e_ix = Complex64::from_polar(1.0, x);
        // H(x) = Π (1 - e^{ix}/u_v); each factor has positive real part, so
        // the per-factor principal arguments sum to a continuous phase
        let mut h = Complex64::new(1.0, 0.0);
        let mut theta = 0.0f64;
        for u in &roots {
            let factor = Complex64::new(1.0, 0.0) - e_ix / u;
            h *= factor;
            theta += 2.0 * factor.arg();
        }
        let h_abs = h.norm();
        let sin_x = x.sin();
        let mut q = Vec::with_capacity(roots.len());
        for (v, u) in roots.iter().enumerate() {
            // L(λ, y) = d/dy Π (1 - y/u_w) at y = u_v: every term of the
            // product rule except the v-th carries a (1 - u_v/u_v) factor
            let mut l = -1.0 / u;
            for (w, uw) in roots.iter().enumerate() {
                if w != v {
                    l *= Complex64::new(1.0, 0.0) - u / uw;
                }
            }
            let denom = (u - e_ix) * (u - e_ix.conj()) * l;
            q.push(Complex64::new(h_abs * sin_x, 0.0) / denom);
        }
        Ok(NodeData { x, lambda, f_value, roots, theta, q })
    }
}

/// Analyze a symbol for a scalar function: certify monotonicity of `g` on
/// `(0, π)` (required for `r >= 2`), sample the outer roots across the
/// spectrum, and record the decay margin `δ_0`, the weight bound `Δ`, and
/// `max |f ∘ g|`.
pub fn analyze(sym: &LaurentSymbol, f: &ScalarFunction, grid: usize) -> Result<SymbolAnalysis> {
    let grid = grid.max(64);
    let r = sym.half_bandwidth();
    if r >= 2 {
        for x in level_nodes(grid) {
            if sym.g_prime(x) <= 0.0 {
                return Err(Error::MonotonicityCertificateFailed { at: x });
            }
        }
    }
    let mut analysis = SymbolAnalysis {
        symbol: sym.clone(),
        delta_0: f64::INFINITY,
        q_max: 0.0,
        f_max: 0.0,
        lambda_range: (sym.g(0.0), sym.g(std::f64::consts::PI)),
        grid,
    };
    for x in level_nodes(grid) {
        let node = analysis.node(f, x)?;
        analysis.f_max = analysis.f_max.max(node.f_value.abs());
        for u in &node.roots {
            analysis.delta_0 = analysis.delta_0.min(u.norm().ln());
        }
        for qv in &node.q {
            analysis.q_max = analysis.q_max.max(qv.norm());
        }
    }
    if r == 1 {
        analysis.delta_0 = f64::INFINITY;
    } else if analysis.delta_0 <= UNIT_ROOT_TOL {
        return Err(Error::RootsNearUnitCircle { min_gap: analysis.delta_0 });
    }
    Ok(analysis)
}
