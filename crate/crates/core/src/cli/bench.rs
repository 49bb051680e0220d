use std::io::Write;

use serde::Serialize;

use crate::io::{gen_random, GeneratorSpec};
use crate::kernels::KernelId;
use crate::solvers::{solve_minplus, SolveOptions};

use super::CliError;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub kernels: Vec<KernelId>,
    pub reps: usize,
    pub seed: u64,
    pub restrict_to_v1: bool,
}

/// One CSV row: a single layer of a single solve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub layer: usize,
    pub kernel: String,
    pub tile: Option<usize>,
    pub batch_count: u64,
    pub scalar_ops: u64,
    pub update_writes: u64,
    pub layer_wall_ns: u64,
    pub rep: usize,
}

/// Solves a generated asymmetric instance per `n` with every kernel, `reps`
/// times each, sequentially.
pub fn run_bench(config: &BenchConfig, log: &mut dyn Write) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for &n in &config.n_list {
        let doc = gen_random(&GeneratorSpec::new(n, config.seed, 1000, false))?;
        let opts = SolveOptions {
            restrict_to_v1: config.restrict_to_v1,
            ..SolveOptions::default()
        };
        for kernel in &config.kernels {
            for rep in 0..config.reps {
                let out = solve_minplus(&doc.instance, kernel, &opts)?;
                writeln!(
                    log,
                    "n {n} kernel {kernel} rep {rep}: cost {} in {:.3} s",
                    out.cost,
                    out.stats.wall_ns as f64 / 1e9
                )?;
                rows.extend(out.stats.layers.iter().map(|l| BenchRow {
                    n,
                    layer: l.level,
                    kernel: kernel.name.clone(),
                    tile: kernel.effective_tile(),
                    batch_count: l.kernel_calls,
                    scalar_ops: l.scalar_ops,
                    update_writes: l.update_writes,
                    layer_wall_ns: l.wall_ns,
                    rep,
                }));
            }
        }
    }
    Ok(rows)
}

pub(super) fn write_csv<W: Write>(
    mut w: csv::Writer<W>,
    rows: &[BenchRow],
) -> Result<(), CliError> {
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
