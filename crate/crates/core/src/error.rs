//! Crate-wide error type.

use std::fmt;

/// Errors reported by the library.
///
/// Variants are deliberately fine-grained so callers (tests, the CLI) can
/// distinguish usage mistakes, malformed input files, and numerical failures.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands live in incompatible ambient dimensions.
    DimensionMismatch { expected: usize, found: usize },
    /// A row/column index fell outside `1..=n`.
    IndexOutOfRange { index: i64, n: usize },
    /// An operation requiring a square matrix received a rectangular one.
    NotSquare { rows: usize, cols: usize },
    /// A kernel requiring (skew-)Hermitian input received something else.
    NotHermitian { deviation: f64, scale: f64 },
    /// No dense kernel exists for this (function, matrix class) combination.
    KernelUnsupported { function: String, class: String },
    /// The scalar function is undefined at a point where it must be evaluated.
    FunctionUndefined { function: String, at: f64 },
    /// The scalar function has no complex-plane evaluation.
    ComplexUnsupported { function: String },
    /// A partition failed the cover/disjointness validation.
    InvalidPartition { tile: usize, reason: &'static str },
    /// Input matrix has entries outside the declared bandwidth.
    BandwidthViolation { diagonal: i64, bandwidth: usize },
    /// The decay-bound parameter `tau` must exceed 1.
    TauOutOfRange { tau: f64 },
    /// Submatrix index sets grew past the configured cap; a dense kernel on
    /// the full matrix is the better tool at this point.
    DenseFallbackAdvised { size: usize, cap: usize },
    /// Adaptive quadrature hit its refinement cap without converging.
    QuadratureDidNotConverge { points: usize, estimate: f64 },
    /// The generating function failed its monotonicity certificate.
    MonotonicityCertificateFailed { at: f64 },
    /// Symbol roots sit too close to the unit circle for stable separation.
    RootsNearUnitCircle { min_gap: f64 },
    /// The polynomial degree / coefficient list is unusable.
    InvalidCoefficients(&'static str),
    /// Invalid symbol (empty, or leading coefficient zero).
    InvalidSymbol(&'static str),
    /// Eigenvalue iteration failed to converge.
    EigenDidNotConverge { iterations: usize },
    /// Matrix Market: banner line is malformed or unsupported.
    MmMalformedHeader(String),
    /// Matrix Market: pattern files carry no values and are rejected.
    MmPatternUnsupported,
    /// Matrix Market: the stored matrix is not square.
    MmNotSquare { rows: usize, cols: usize },
    /// Matrix Market: a triplet index is out of bounds.
    MmIndexOutOfBounds { row: usize, col: usize, n: usize },
    /// Matrix Market: a data line failed to parse.
    MmParse { line: usize, message: String },
    /// I/O failure while reading an input file.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, n } => {
                write!(f, "index {index} out of range 1..={n}")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::NotHermitian { deviation, scale } => {
                write!(f, "matrix is not Hermitian (deviation {deviation:.3e}, scale {scale:.3e})")
            }
            Error::KernelUnsupported { function, class } => {
                write!(f, "no dense kernel for function `{function}` on {class} matrices")
            }
            Error::FunctionUndefined { function, at } => {
                write!(f, "function `{function}` undefined at {at}")
            }
            Error::ComplexUnsupported { function } => {
                write!(f, "function `{function}` has no complex evaluation")
            }
            Error::InvalidPartition { tile, reason } => {
                write!(f, "invalid partition at tile {tile}: {reason}")
            }
            Error::BandwidthViolation { diagonal, bandwidth } => {
                write!(f, "nonzero diagonal {diagonal} violates bandwidth {bandwidth}")
            }
            Error::TauOutOfRange { tau } => write!(f, "tau must exceed 1, got {tau}"),
            Error::DenseFallbackAdvised { size, cap } => {
                write!(f, "submatrix size {size} exceeds cap {cap}; dense fallback advised")
            }
            Error::QuadratureDidNotConverge { points, estimate } => {
                write!(f, "quadrature did not converge after {points} points (last estimate {estimate:.6e})")
            }
            Error::MonotonicityCertificateFailed { at } => {
                write!(f, "generating function not strictly increasing near x = {at}")
            }
            Error::RootsNearUnitCircle { min_gap } => {
                write!(f, "symbol roots within {min_gap:.3e} of the unit circle")
            }
            Error::InvalidCoefficients(msg) => write!(f, "invalid coefficients: {msg}"),
            Error::InvalidSymbol(msg) => write!(f, "invalid symbol: {msg}"),
            Error::EigenDidNotConverge { iterations } => {
                write!(f, "eigenvalue iteration did not converge in {iterations} steps")
            }
            Error::MmMalformedHeader(msg) => write!(f, "Matrix Market: malformed header: {msg}"),
            Error::MmPatternUnsupported => {
                write!(f, "Matrix Market: pattern files are unsupported (values required)")
            }
            Error::MmNotSquare { rows, cols } => {
                write!(f, "Matrix Market: matrix is {rows}x{cols}, not square")
            }
            Error::MmIndexOutOfBounds { row, col, n } => {
                write!(f, "Matrix Market: entry ({row}, {col}) out of bounds for n = {n}")
            }
            Error::MmParse { line, message } => {
                write!(f, "Matrix Market: parse error on line {line}: {message}")
            }
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
