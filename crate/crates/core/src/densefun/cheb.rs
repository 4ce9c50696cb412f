//! Chebyshev interpolation on an interval, with a sampled uniform-error
//! estimate. This is the computable stand-in for the (unknowable) best
//! polynomial approximation error that the engines report in their bounds.

use crate::error::{Error, Result};

/// A Chebyshev interpolant of degree `k` on `[a, b]`.
#[derive(Debug, Clone)]
pub struct ChebApprox {
    a: f64,
    b: f64,
    /// Chebyshev-basis coefficients c_0..c_k.
    coeffs: Vec<f64>,
    /// max |f - p| sampled on a Chebyshev-extrema grid of 10(k+1) points.
    error_estimate: f64,
}

impl ChebApprox {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }

    /// Evaluate by Clenshaw recurrence.
    pub fn eval(&self, x: f64) -> f64 {
        let t = if self.b > self.a { (2.0 * x - self.a - self.b) / (self.b - self.a) } else { 0.0 };
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coeffs.iter().skip(1).rev() {
            let tmp = 2.0 * t * b1 - b2 + c;
            b2 = b1;
            b1 = tmp;
        }
        t * b1 - b2 + self.coeffs[0]
    }

    /// Convert to monomial coefficients in the shifted-scaled variable
    /// `w = (2x - a - b)/(b - a)`, i.e. `p(x) = sum q_s w^s`.
    pub fn monomial_in_mapped_variable(&self) -> Vec<f64> {
        let k = self.degree();
        // t_prev, t_cur: monomial coefficient vectors of T_{s-1}, T_s
        let mut out = vec![0.0; k + 1];
        let mut t_prev = vec![0.0; k + 1];
        let mut t_cur = vec![0.0; k + 1];
        t_prev[0] = 1.0; // T_0 = 1
        out[0] += self.coeffs[0];
        if k >= 1 {
            t_cur[1] = 1.0; // T_1 = w
            for (o, t) in out.iter_mut().zip(&t_cur) {
                *o += self.coeffs[1] * t;
            }
            for s in 2..=k {
                // T_s = 2 w T_{s-1} - T_{s-2}
                let mut next = vec![0.0; k + 1];
                for p in 0..k {
                    next[p + 1] += 2.0 * t_cur[p];
                }
                for p in 0..=k {
                    next[p] -= t_prev[p];
                }
                for (o, t) in out.iter_mut().zip(&next) {
                    *o += self.coeffs[s] * t;
                }
                t_prev = t_cur;
                t_cur = next;
            }
        }
        out
    }
}

/// Interpolate `f` at the k+1 Chebyshev nodes of `[a, b]` and estimate the
/// uniform error on a dense extrema grid (which includes both endpoints).
pub fn cheb_approx(
    f: impl Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    k: usize,
) -> Result<ChebApprox> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::InvalidCoefficients("interpolation interval is invalid"));
    }
    if a == b {
        // degenerate enclosure (e.g. a scalar multiple of the identity)
        let v = f(a)?;
        let mut coeffs = vec![0.0; k + 1];
        coeffs[0] = v;
        return Ok(ChebApprox { a, b, coeffs, error_estimate: 0.0 });
    }
    let m = k + 1;
    let nodes: Vec<f64> = (0..m)
        .map(|i| {
            let t = ((2 * i + 1) as f64 * std::f64::consts::PI / (2 * m) as f64).cos();
            0.5 * (a + b) + 0.5 * (b - a) * t
        })
        .collect();
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect::<Result<_>>()?;
    let mut coeffs = vec![0.0; m];
    for (j, c) in coeffs.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (i, &v) in values.iter().enumerate() {
            acc += v * ((2 * i + 1) as f64 * j as f64 * std::f64::consts::PI / (2 * m) as f64).cos();
        }
        *c = acc * if j == 0 { 1.0 } else { 2.0 } / m as f64;
    }
    let approx = ChebApprox { a, b, coeffs, error_estimate: 0.0 };
    // error sampled on the extrema grid cos(j pi / N), which hits a and b
    let grid = 10 * m;
    let mut err = 0.0f64;
    for j in 0..=grid {
        let t = (j as f64 * std::f64::consts::PI / grid as f64).cos();
        let x = 0.5 * (a + b) + 0.5 * (b - a) * t;
        let e = (f(x)? - approx.eval(x)).abs();
        if e > err {
            err = e;
        }
    }
    Ok(ChebApprox { error_estimate: err, ..approx })
}
