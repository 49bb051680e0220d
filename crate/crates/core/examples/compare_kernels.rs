//! Time the built-in min-plus kernels on the same square product and check
//! that they agree bit for bit.

use std::time::Instant;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use tsp_minplus::{kernel_lookup, CostMatrix, ExtCost, KernelId, OpCounter};

fn random(rng: &mut SplitMix64, n: usize) -> CostMatrix {
    let data = (0..n * n)
        .map(|_| match rng.next_u64() % 10 {
            0 => ExtCost::INFINITY,
            x => ExtCost(x * 1000 + rng.next_u64() % 1000),
        })
        .collect();
    CostMatrix::new(n, n, data).unwrap()
}

fn main() {
    let n = 256;
    let mut rng = SplitMix64::seed_from_u64(7);
    let (a, b) = (random(&mut rng, n), random(&mut rng, n));

    let mut reference = None;
    for id in [
        KernelId::naive(),
        KernelId::transposed(),
        KernelId::tiled(8),
        KernelId::tiled(32),
        KernelId::tiled(128),
    ] {
        let kernel = kernel_lookup(&id).unwrap();
        let mut ops = OpCounter::new();
        let t = Instant::now();
        let c = kernel.multiply(&a, &b, &mut ops).unwrap();
        let secs = t.elapsed().as_secs_f64();
        let same = reference.get_or_insert_with(|| c.clone()) == &c;
        println!(
            "{:<12} {:>8.2} ms  {:>7.1} Mops/s  matches naive: {same}",
            id.to_string(),
            secs * 1e3,
            ops.scalar_ops as f64 / secs / 1e6
        );
    }
}
