//! Keep every layer, walk the table back to an optimal tour, and compare it
//! with exhaustive search.

use tsp_minplus::io::{gen_random, GeneratorSpec};
use tsp_minplus::{brute_force, reconstruct_tour, solve_minplus, KernelId, SolveOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = gen_random(&GeneratorSpec::new(9, 2024, 1000, false))?.instance;
    let opts = SolveOptions {
        keep_layers: true,
        ..SolveOptions::default()
    };
    let out = solve_minplus(&inst, &KernelId::transposed(), &opts)?;
    let table = out.table.expect("layers were kept");
    let tour = reconstruct_tour(&table, &inst)?;
    let best = brute_force(&inst)?;

    println!("dp tour    {:?} cost {}", tour.order, tour.cost);
    println!("brute tour {:?} cost {}", best.order, best.cost);
    assert_eq!(tour.cost, best.cost);
    Ok(())
}
