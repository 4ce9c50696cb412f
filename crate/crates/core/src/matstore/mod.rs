//! Matrix storage: diagonal-sparse, dense, and Toeplitz representations,
//! structure detection, submatrix extraction, and Matrix Market ingestion.

pub mod dense;
pub mod diagmatrix;
pub mod market;
pub mod toeplitz;

pub use dense::DenseMatrix;
pub use diagmatrix::{kron_sum_laplacian, DiagMatrix};
pub use market::{read_matrix_market, read_matrix_market_from, MarketMatrix};
pub use toeplitz::ToeplitzMatrix;
