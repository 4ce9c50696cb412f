//! Adaptive quadrature on `[0, π]` for the element integrals.
//!
//! All integrands here extend to smooth even 2π-periodic functions, where an
//! equispaced rule over the period is spectrally accurate. The rule uses
//! offset (midpoint) nodes so the endpoints are never evaluated: several
//! integrands are only defined by one-sided limits at `x = 0, π` because the
//! symbol's unit-circle root pair collides there.

use crate::error::{Error, Result};

pub const QUAD_START: usize = 64;
pub const QUAD_CAP: usize = 1 << 20;

/// Offset equispaced nodes for one refinement level.
pub fn level_nodes(points: usize) -> impl Iterator<Item = f64> {
    let h = std::f64::consts::PI / points as f64;
    (0..points).map(move |j| (j as f64 + 0.5) * h)
}

/// `∫_0^π integrand(x) dx`, doubling the node count from 64 until two
/// successive estimates agree to `tol · (1 + |estimate|)` or the node cap is
/// reached.
pub fn quadrature(integrand: impl Fn(f64) -> Result<f64>, tol: f64) -> Result<f64> {
    let mut points = QUAD_START;
    let mut prev: Option<f64> = None;
    loop {
        let h = std::f64::consts::PI / points as f64;
        let mut sum = 0.0;
        for x in level_nodes(points) {
            sum += integrand(x)?;
        }
        let estimate = sum * h;
        if let Some(p) = prev {
            if (estimate - p).abs() < tol * (1.0 + estimate.abs()) {
                return Ok(estimate);
            }
        }
        if points >= QUAD_CAP {
            return Err(Error::QuadratureDidNotConverge { points, estimate });
        }
        prev = Some(estimate);
        points *= 2;
    }
}
