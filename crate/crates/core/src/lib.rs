//! Approximation of matrix functions driven by nonzero-diagonal structure.
//!
//! The library approximates `f(A)` (whole matrices, single elements,
//! diagonals, and traces) by reading off which diagonals of `A` are nonzero,
//! extracting the small principal submatrices a degree-k polynomial of `A`
//! can reach, and applying a dense kernel to those. Specialized fast paths
//! exist for banded matrices (overlapping block algorithm), Toeplitz matrices
//! (displacement generators plus value sharing along displaced diagonals),
//! and symmetric banded Toeplitz matrices (closed-form element integrals).

pub mod approx;
pub mod banded;
pub mod closedform;
pub mod densefun;
pub mod diagsets;
pub mod error;
pub mod matstore;
pub mod rng;
pub mod scalar;
pub mod toepdisp;

pub use approx::ApproxReport;
pub use densefun::{ScalarFunction, SpectralEnclosure};
pub use diagsets::{DiagSet, IndexSet};
pub use error::{Error, Result};
pub use matstore::{DenseMatrix, DiagMatrix, ToeplitzMatrix};
pub use scalar::Scalar;
