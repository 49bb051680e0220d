//! Exact TSP engines.
//!
//! * [`brute_force`] enumerates every tour; the independent oracle.
//! * [`held_karp_pull`] is the textbook dynamic program: each state pulls its
//!   value from the previous layer.
//! * [`solve_minplus`] computes each layer by multiplying batches of `n`
//!   previous-layer rows against the cost matrix in the min-plus semiring and
//!   pushing the products into the next layer.
//!
//! All three return identical optimal costs on every instance.

mod brute;
mod instance;
mod minplus;
mod pull;
mod table;

pub use brute::{brute_force, BRUTE_FORCE_MAX_N};
pub use instance::{Instance, Tour};
pub use minplus::{
    expected_kernel_calls, layer_source_rows, memory_estimate, solve_minplus, solve_minplus_with,
    LayerStats, MinPlusOutcome, SolveOptions, SolveStats, DEFAULT_MEM_BUDGET,
};
pub use pull::{held_karp_pull, PullOutcome};
pub use table::{close_tour, reconstruct_tour, DpLayer, DpTable};

use thiserror::Error;

use crate::domain::DomainError;
use crate::kernels::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("brute force is limited to n <= {max}, got n = {n}")]
    TooLargeForBruteForce { n: usize, max: usize },
    #[error("estimated memory {needed} bytes exceeds budget of {budget} bytes")]
    MemoryBudget { needed: u64, budget: u64 },
    #[error("layer has cardinality {got}, expected {expected}")]
    LayerMismatch { expected: usize, got: usize },
    #[error("DP table has {got} layers, expected {expected}")]
    IncompleteTable { expected: usize, got: usize },
    #[error("inconsistent DP table at subset {subset:?}, last vertex {last}")]
    CorruptTable { subset: Vec<usize>, last: usize },
    #[error("instance admits no finite tour")]
    NoTour,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}
