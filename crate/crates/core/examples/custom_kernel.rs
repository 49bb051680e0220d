//! Plug a user-defined product into the solver.
//!
//! Any type implementing `MinPlusKernel` can replace the built-in kernels.
//! This one skips work for infinite left-hand entries, which are common in
//! the early layers.

use tsp_minplus::io::{gen_random, GeneratorSpec};
use tsp_minplus::kernels::MatrixView;
use tsp_minplus::{
    held_karp_pull, solve_minplus_with, ExtCost, MinPlusKernel, OpCounter, SolveOptions,
};

struct SkipInfinite;

impl MinPlusKernel for SkipInfinite {
    fn name(&self) -> &str {
        "skip-infinite"
    }

    fn product_unchecked(
        &self,
        a: MatrixView<'_>,
        b: MatrixView<'_>,
        out: &mut [ExtCost],
        counter: &mut OpCounter,
    ) {
        let q = b.cols;
        for i in 0..a.rows {
            let row = &mut out[i * q..(i + 1) * q];
            row.fill(ExtCost::INFINITY);
            for (j, &x) in a.row(i).iter().enumerate() {
                if !x.is_finite() {
                    continue;
                }
                for (o, &y) in row.iter_mut().zip(b.row(j)) {
                    *o = (*o).min(x.add(y));
                }
            }
        }
        counter.record_product(a.rows, a.cols, q);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = gen_random(&GeneratorSpec::new(14, 5, 1000, false))?.instance;
    // Unrestricted mode feeds many all-infinite rows through the kernel.
    let opts = SolveOptions {
        restrict_to_v1: false,
        ..SolveOptions::default()
    };
    let out = solve_minplus_with(&inst, &SkipInfinite, &opts)?;
    println!(
        "cost {} with {} kernel calls",
        out.cost, out.stats.total_kernel_calls
    );
    assert_eq!(out.cost, held_karp_pull(&inst, false).cost);
    Ok(())
}
