//! Integer-interval algebra for diagonal-index sets and the submatrix-index
//! machinery built on top of it.
//!
//! All types here are pure structure: they know which diagonals of a matrix
//! are nonzero and which row/column indices a degree-bounded product chain
//! can visit, but never touch numeric values. Everything is immutable after
//! construction and safe to share across threads.

pub mod delta;
pub mod diagset;
pub mod indexset;
pub mod intervals;
pub mod partition;

pub use delta::{delta_estimate, delta_set, delta_union, DeltaSet};
pub use diagset::{minkowski_sum, s_sets, u_set, DiagSet};
pub use indexset::IndexSet;
pub use intervals::IntervalList;
pub use partition::{default_partition, PairBlock, Partition};
