//! Exact travelling-salesman solving by layer-wise min-plus matrix products.
//!
//! The Held-Karp table is built one cardinality layer at a time. Rows of the
//! previous layer are grouped into batches of `n`, each batch is multiplied
//! by the cost matrix in the (min, +) semiring, and the products are pushed
//! into the next layer. Any faster min-plus kernel therefore speeds up the
//! whole solver.
//!
//! ```
//! use tsp_minplus::{solve_minplus, held_karp_pull, Instance, KernelId, SolveOptions};
//!
//! let inst = Instance::from_rows(&[[0, 1, 15, 6], [2, 0, 7, 3], [9, 6, 0, 12], [10, 4, 8, 0]])?;
//! let out = solve_minplus(&inst, &KernelId::tiled(32), &SolveOptions::default())?;
//! assert_eq!(out.cost, held_karp_pull(&inst, false).cost);
//! assert_eq!(out.stats.total_kernel_calls, 3);
//! # Ok::<(), tsp_minplus::SolveError>(())
//! ```
//!
//! Modules:
//! * [`domain`]: subset bitmasks, colex ranking, batch generation
//! * [`kernels`]: saturating costs and min-plus product kernels
//! * [`solvers`]: brute force, pull DP, batched push solver, tour recovery
//! * [`io`]: TSPLIB and JSON input, seeded instance generation
//! * [`cli`]: the `tsp-minplus` command line

pub mod cli;
pub mod domain;
pub mod io;
pub mod kernels;
pub mod solvers;

pub use domain::{SubsetMask, MAX_N};
pub use kernels::{kernel_lookup, CostMatrix, ExtCost, KernelId, MinPlusKernel, OpCounter};
pub use solvers::{
    brute_force, close_tour, expected_kernel_calls, held_karp_pull, reconstruct_tour,
    solve_minplus, solve_minplus_with, DpLayer, DpTable, Instance, SolveError, SolveOptions,
    SolveStats, Tour,
};
