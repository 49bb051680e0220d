//! Solve a TSPLIB file with the batched min-plus solver and print the
//! per-layer accounting.
//!
//! ```text
//! cargo run --example solve_tsplib -- crates/core/data/gr17.tsp
//! ```

use std::path::PathBuf;

use tsp_minplus::io::read_instance;
use tsp_minplus::{solve_minplus, KernelId, SolveOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/gr17.tsp"));
    let doc = read_instance(&path, None)?;
    let out = solve_minplus(
        &doc.instance,
        &KernelId::tiled(32),
        &SolveOptions::default(),
    )?;

    println!(
        "{} ({} cities): optimal tour costs {}",
        doc.name,
        doc.instance.n(),
        out.cost
    );
    println!(
        "{:>5} {:>8} {:>12} {:>10}",
        "layer", "batches", "scalar ops", "ms"
    );
    for l in &out.stats.layers {
        println!(
            "{:>5} {:>8} {:>12} {:>10.2}",
            l.level,
            l.kernel_calls,
            l.scalar_ops,
            l.wall_ns as f64 / 1e6
        );
    }
    println!("total kernel calls {}", out.stats.total_kernel_calls);
    Ok(())
}
