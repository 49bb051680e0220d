//! Predicted versus measured kernel calls, with and without the
//! city-1 restriction.

use tsp_minplus::io::{gen_random, GeneratorSpec};
use tsp_minplus::{expected_kernel_calls, solve_minplus, KernelId, SolveOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>3} {:>10} {:>10} {:>12} {:>12}",
        "n", "restricted", "measured", "unrestricted", "measured"
    );
    for n in [4, 8, 12, 16] {
        let inst = gen_random(&GeneratorSpec::new(n, n as u64, 1000, false))?.instance;
        let mut row = format!("{n:>3}");
        for (restrict_to_v1, width) in [(true, 10), (false, 12)] {
            let opts = SolveOptions {
                restrict_to_v1,
                ..SolveOptions::default()
            };
            let stats = solve_minplus(&inst, &KernelId::tiled(32), &opts)?.stats;
            row += &format!(
                " {:>width$} {:>10}",
                expected_kernel_calls(n, restrict_to_v1),
                stats.total_kernel_calls
            );
        }
        println!("{row}");
    }
    Ok(())
}
