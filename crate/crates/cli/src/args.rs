//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "funmat",
    about = "Approximate matrix functions by exploiting nonzero-diagonal structure",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Cap on worker threads (default: all cores). Results do not depend on
    /// the thread count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output file (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Matrix Market file with the input matrix.
    #[arg(long, conflicts_with = "gen")]
    pub mtx: Option<std::path::PathBuf>,

    /// Built-in generator spec: kron-laplacian:N | tridiag:b,c,N |
    /// banded-random:N,M,SEED | toeplitz-random:N,D,SEED |
    /// toeplitz:c0,c1,..|r0,r1,.. | circulant:v0,v1,..;N
    #[arg(long)]
    pub gen: Option<String>,

    /// Scalar factor applied to the input matrix before anything else.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub scale: f64,
}

#[derive(Debug, Args)]
pub struct FunArgs {
    /// Scalar function: exp | log | sqrt | inv | inv-sqrt | poly:c0,c1,...
    #[arg(long = "f")]
    pub function: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Whole-matrix approximation on the degree-k sparsity pattern.
    Funm {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fun: FunArgs,
        /// Polynomial degree driving the index sets.
        #[arg(long)]
        k: Option<usize>,
        /// Target error; used to select k when --k is omitted.
        #[arg(long)]
        tol: Option<f64>,
        /// Row-band height of the tile partition.
        #[arg(long, default_value_t = 64)]
        block: usize,
    },
    /// Overlapping-window approximation for banded matrices.
    Banded {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fun: FunArgs,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Bandwidth (default: inferred from the nonzero diagonals).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Displacement-structured approximation for Toeplitz matrices.
    Toeplitz {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fun: FunArgs,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Abort with advice when the submatrices outgrow this cap.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// One entry of f(A).
    Element {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fun: FunArgs,
        #[arg(long)]
        k: usize,
        /// Row index (1-based).
        #[arg(long)]
        i: usize,
        /// Column index (1-based).
        #[arg(long)]
        j: usize,
    },
    /// Trace of f(A).
    Trace {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fun: FunArgs,
        #[arg(long)]
        k: usize,
    },
    /// Main diagonal of f(A), batched.
    Diag {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fun: FunArgs,
        #[arg(long)]
        k: usize,
        /// Rows per shared dense solve.
        #[arg(long, default_value_t = 100)]
        batch: usize,
    },
    /// Closed-form element formulas for symmetric banded Toeplitz symbols;
    /// sweeps matrix sizes and reports the error against a dense oracle.
    Closedform {
        /// Symbol coefficients "a0,a1,...,ar".
        #[arg(long)]
        symbol: String,
        #[command(flatten)]
        fun: FunArgs,
        /// Largest matrix size of the sweep.
        #[arg(long)]
        n: usize,
        /// Corner width (default: chosen from --eps, then capped at n).
        #[arg(long)]
        m: Option<usize>,
        /// Accuracy target for the corner-width selection.
        #[arg(long, default_value_t = 1e-10)]
        eps: f64,
        /// Sweep step.
        #[arg(long, default_value_t = 5)]
        step: usize,
    },
    /// Per-diagonal decay bound against measured diagonal maxima.
    DecayBound {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fun: FunArgs,
        /// Rescale the matrix to this spectral norm first.
        #[arg(long)]
        norm: Option<f64>,
        /// Bound parameter; must exceed 1.
        #[arg(long)]
        tau: f64,
        /// Largest polynomial degree considered, as "lo..hi" or a single
        /// number.
        #[arg(long, default_value = "0..40")]
        k: String,
    },
    /// Run an engine next to its dense reference and report error columns.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fun: FunArgs,
        /// Which engine to compare: element | trace | diag | funm | banded |
        /// toeplitz.
        #[arg(long)]
        engine: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        batch: usize,
        #[arg(long, default_value_t = 64)]
        block: usize,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
}
