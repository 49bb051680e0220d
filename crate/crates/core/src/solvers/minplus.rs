use std::time::Instant;

use crate::domain::{choose, Batches, LayerShape};
use crate::kernels::{kernel_lookup, ExtCost, KernelId, MatrixView, MinPlusKernel, OpCounter};

use super::{close_tour, DpLayer, DpTable, Instance, SolveError};

/// Default memory budget for DP storage: 4 GiB.
pub const DEFAULT_MEM_BUDGET: u64 = 4 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Enumerate only subsets containing city 1. Other subsets have all-infinite
    /// rows, so this changes work but not results.
    pub restrict_to_v1: bool,
    /// Retain every layer (needed for tour reconstruction).
    pub keep_layers: bool,
    /// Pad a short final batch with infinite rows to a full `n x n` product.
    pub pad_last_batch: bool,
    /// Upper bound on the estimated DP storage in bytes.
    pub mem_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            restrict_to_v1: true,
            keep_layers: false,
            pad_last_batch: false,
            mem_budget: DEFAULT_MEM_BUDGET,
        }
    }
}

/// Accounting for one layer `level` (the cardinality being produced).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LayerStats {
    pub level: usize,
    /// Rows of the previous layer that were multiplied.
    pub source_rows: u64,
    pub kernel_calls: u64,
    pub scalar_ops: u64,
    pub update_writes: u64,
    /// Pushes that landed on a cell already holding a finite value.
    pub finite_rewrites: u64,
    pub wall_ns: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub layers: Vec<LayerStats>,
    pub total_kernel_calls: u64,
    pub scalar_ops: u64,
    pub update_writes: u64,
    pub finite_rewrites: u64,
    pub wall_ns: u64,
}

impl SolveStats {
    /// Kernel calls for levels `2..=n`, in order.
    pub fn kernel_calls_per_layer(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.kernel_calls).collect()
    }

    pub fn wall_ns_per_layer(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.wall_ns).collect()
    }

    fn push(&mut self, layer: LayerStats) {
        self.total_kernel_calls += layer.kernel_calls;
        self.scalar_ops += layer.scalar_ops;
        self.update_writes += layer.update_writes;
        self.finite_rewrites += layer.finite_rewrites;
        self.wall_ns += layer.wall_ns;
        self.layers.push(layer);
    }
}

#[derive(Debug, Clone)]
pub struct MinPlusOutcome {
    pub cost: ExtCost,
    pub stats: SolveStats,
    pub table: Option<DpTable>,
}

/// Number of previous-layer rows multiplied while producing layer `level`:
/// `C(n-1, level-2)` restricted, `C(n, level-1)` otherwise.
pub fn layer_source_rows(n: usize, level: usize, restricted: bool) -> u64 {
    if restricted {
        choose(n - 1, level - 2)
    } else {
        choose(n, level - 1)
    }
}

/// Kernel invocations of a full solve: `sum_{level=2..n} ceil(K_level / n)`.
pub fn expected_kernel_calls(n: usize, restricted: bool) -> u64 {
    (2..=n)
        .map(|level| layer_source_rows(n, level, restricted).div_ceil(n as u64))
        .sum()
}

/// Estimated bytes of DP storage: every layer when `keep_layers`, otherwise
/// the two largest adjacent layers.
pub fn memory_estimate(n: usize, restricted: bool, keep_layers: bool) -> u64 {
    let rows = |card: usize| {
        if restricted {
            choose(n - 1, card - 1)
        } else {
            choose(n, card)
        }
    };
    let cell = std::mem::size_of::<ExtCost>() as u64 * n as u64;
    let total_rows = if keep_layers {
        (1..=n).map(rows).sum()
    } else if n == 1 {
        1
    } else {
        (2..=n).map(|c| rows(c - 1) + rows(c)).max().unwrap_or(0)
    };
    total_rows * cell
}

/// Batched push solver with a registered kernel.
pub fn solve_minplus(
    inst: &Instance,
    kernel: &KernelId,
    opts: &SolveOptions,
) -> Result<MinPlusOutcome, SolveError> {
    let kernel = kernel_lookup(kernel)?;
    solve_minplus_with(inst, kernel.as_ref(), opts)
}

/// Batched push solver over any [`MinPlusKernel`].
///
/// For each level `2..=n`, the previous layer is cut into batches of `n`
/// consecutive rows. Each batch is multiplied by the cost matrix, giving
/// `p[i][k] = min_j dp(B[i], j) + c(j, k)`, and `p[i][k]` is pushed into
/// `dp(B[i] + k, k)` for every `k` outside `B[i]`.
pub fn solve_minplus_with(
    inst: &Instance,
    kernel: &dyn MinPlusKernel,
    opts: &SolveOptions,
) -> Result<MinPlusOutcome, SolveError> {
    let n = inst.n();
    let restricted = opts.restrict_to_v1;
    let needed = memory_estimate(n, restricted, opts.keep_layers);
    if needed > opts.mem_budget {
        return Err(SolveError::MemoryBudget {
            needed,
            budget: opts.mem_budget,
        });
    }

    let costs = inst.costs().view();
    let mut stats = SolveStats::default();
    let mut kept = Vec::new();
    let mut prev = DpLayer::base(n, restricted);
    let mut product = vec![ExtCost::INFINITY; n * n];
    let mut padded = if opts.pad_last_batch {
        vec![ExtCost::INFINITY; n * n]
    } else {
        Vec::new()
    };

    for level in 2..=n {
        let started = Instant::now();
        let mut layer_stats = LayerStats {
            level,
            ..LayerStats::default()
        };
        let mut counter = OpCounter::new();
        let mut cur = DpLayer::infinite(LayerShape::new(n, level, restricted)?);
        let prev_shape = prev.shape();
        let out = cur.values_mut();

        for batch in Batches::new(n, level - 1, restricted)? {
            let m = batch.len();
            let first = batch.first_row as usize;
            let rows = prev.rows_view(first, m);
            let operand = if opts.pad_last_batch && m < n {
                padded[..m * n].copy_from_slice(rows.data);
                padded[m * n..].fill(ExtCost::INFINITY);
                MatrixView::new(n, n, &padded)?
            } else {
                rows
            };
            let p = &mut product[..operand.rows * n];
            kernel.multiply_into(operand, costs, p, &mut counter)?;
            layer_stats.kernel_calls += 1;
            layer_stats.source_rows += m as u64;

            for (i, &source) in batch.members.iter().enumerate() {
                let p_row = &p[i * n..(i + 1) * n];
                for (k, target_row) in prev_shape.successor_rows(source) {
                    let cell = &mut out[target_row as usize * n + k];
                    if cell.is_finite() {
                        layer_stats.finite_rewrites += 1;
                    }
                    *cell = (*cell).min(p_row[k]);
                    layer_stats.update_writes += 1;
                }
            }
        }

        layer_stats.scalar_ops = counter.scalar_ops;
        layer_stats.wall_ns = started.elapsed().as_nanos() as u64;
        stats.push(layer_stats);
        let done = std::mem::replace(&mut prev, cur);
        if opts.keep_layers {
            kept.push(done);
        }
    }

    let cost = close_tour(&prev, inst)?;
    let table = opts.keep_layers.then(|| {
        kept.push(prev);
        DpTable { layers: kept }
    });
    Ok(MinPlusOutcome { cost, stats, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::NaiveKernel;

    fn unit_triangle() -> Instance {
        Instance::from_rows(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]).unwrap()
    }

    #[test]
    fn expected_calls_examples() {
        assert_eq!(expected_kernel_calls(5, true), 5);
        assert_eq!(expected_kernel_calls(2, true), 1);
        assert_eq!(expected_kernel_calls(1, true), 0);
    }

    #[test]
    fn two_cities() {
        let inst = Instance::from_rows(&[[0, 5], [7, 0]]).unwrap();
        for restrict in [true, false] {
            let opts = SolveOptions {
                restrict_to_v1: restrict,
                ..SolveOptions::default()
            };
            let out = solve_minplus(&inst, &KernelId::naive(), &opts).unwrap();
            assert_eq!(out.cost, ExtCost(12));
        }
    }

    #[test]
    fn single_city() {
        let inst = Instance::from_rows(&[[0]]).unwrap();
        let opts = SolveOptions {
            keep_layers: true,
            ..SolveOptions::default()
        };
        let out = solve_minplus(&inst, &KernelId::tiled(32), &opts).unwrap();
        assert_eq!(out.cost, ExtCost(0));
        assert_eq!(out.stats.total_kernel_calls, 0);
        assert_eq!(out.table.unwrap().layers.len(), 1);
    }

    #[test]
    fn unit_triangle_layers() {
        let opts = SolveOptions {
            keep_layers: true,
            ..SolveOptions::default()
        };
        let out = solve_minplus_with(&unit_triangle(), &NaiveKernel, &opts).unwrap();
        assert_eq!(out.cost, ExtCost(3));
        let full = out.table.unwrap().layers.pop().unwrap();
        assert_eq!(full.row(0), &[ExtCost::INFINITY, ExtCost(2), ExtCost(2)]);
    }

    #[test]
    fn five_city_accounting() {
        let rows: Vec<Vec<u64>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| {
                        if i == j {
                            0
                        } else {
                            (i * 7 + j * 3) as u64 % 11 + 1
                        }
                    })
                    .collect()
            })
            .collect();
        let inst = Instance::from_rows(&rows).unwrap();
        let out = solve_minplus(&inst, &KernelId::naive(), &SolveOptions::default()).unwrap();
        assert_eq!(out.stats.kernel_calls_per_layer(), vec![1, 1, 2, 1]);
        assert_eq!(out.stats.total_kernel_calls, 5);
        // K = 1, 4, 6, 4 source rows, each pushing to n - (level - 1) cities.
        assert_eq!(out.stats.update_writes, 4 + 4 * 3 + 6 * 2 + 4);
        assert_eq!(out.stats.scalar_ops, 25 * (1 + 4 + 6 + 4));
        assert_eq!(out.stats.finite_rewrites, 0);
    }

    #[test]
    fn padding_only_changes_scalar_ops() {
        let rows: Vec<Vec<u64>> = (0..6)
            .map(|i| (0..6).map(|j| ((i * 13 + j * 5) % 17) as u64).collect())
            .collect();
        let inst = Instance::from_rows(&rows).unwrap();
        let plain = solve_minplus(&inst, &KernelId::naive(), &SolveOptions::default()).unwrap();
        let padded = solve_minplus(
            &inst,
            &KernelId::naive(),
            &SolveOptions {
                pad_last_batch: true,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        assert_eq!(plain.cost, padded.cost);
        assert_eq!(
            plain.stats.total_kernel_calls,
            padded.stats.total_kernel_calls
        );
        assert_eq!(
            padded.stats.scalar_ops,
            216 * padded.stats.total_kernel_calls
        );
        assert!(plain.stats.scalar_ops < padded.stats.scalar_ops);
    }

    #[test]
    fn memory_budget() {
        let rows = vec![vec![1u64; 30]; 30];
        let inst = Instance::from_rows(&rows).unwrap();
        let opts = SolveOptions {
            keep_layers: true,
            mem_budget: 1_000_000,
            ..SolveOptions::default()
        };
        assert!(matches!(
            solve_minplus(&inst, &KernelId::naive(), &opts),
            Err(SolveError::MemoryBudget { .. })
        ));
        // Two layers of the 3-city restricted table: 2 + 1 rows of 3 cells.
        assert_eq!(memory_estimate(3, true, false), 3 * 3 * 8);
        assert_eq!(memory_estimate(3, true, true), 4 * 3 * 8);
    }

    #[test]
    fn unknown_kernel() {
        assert!(matches!(
            solve_minplus(
                &unit_triangle(),
                &KernelId::named("fredman"),
                &SolveOptions::default()
            ),
            Err(SolveError::Kernel(_))
        ));
    }
}
