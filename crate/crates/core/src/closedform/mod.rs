//! Closed-form element approximations for symmetric banded Toeplitz
//! matrices: the tridiagonal Toeplitz-minus-Hankel integrals with their
//! Bessel specialization for the exponential, and the root-corrected
//! oscillatory integrals for wider bands.

pub mod banded_elements;
pub mod bessel;
pub mod quadrature;
pub mod symbol;
pub mod tridiag;

pub use banded_elements::{assemble_banded, choose_m, element_r2};
pub use bessel::{bessel_ive, bessel_ive_upto};
pub use quadrature::quadrature;
pub use symbol::{analyze, LaurentSymbol, NodeData, SymbolAnalysis};
pub use tridiag::{assemble_tridiag, exp_tridiag_element, tridiag_element};
