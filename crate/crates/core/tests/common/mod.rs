#![allow(dead_code)]

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use tsp_minplus::io::{gen_random, GeneratorSpec};
use tsp_minplus::{CostMatrix, ExtCost, Instance};

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Random `rows x cols` matrix with entries below `max` and roughly
/// `inf_density` of them infinite.
pub fn random_matrix(
    rng: &mut impl RngCore,
    rows: usize,
    cols: usize,
    inf_density: f64,
    max: u64,
) -> CostMatrix {
    let data = (0..rows * cols)
        .map(|_| {
            let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
            if u < inf_density {
                ExtCost::INFINITY
            } else {
                ExtCost(rng.next_u64() % max)
            }
        })
        .collect();
    CostMatrix::new(rows, cols, data).unwrap()
}

pub fn random_instance(n: usize, seed: u64, symmetric: bool) -> Instance {
    gen_random(&GeneratorSpec::new(n, seed, 1000, symmetric))
        .unwrap()
        .instance
}

/// `sum_{level=2..n} K_level * (n - level + 1)`, restricted.
pub fn expected_update_writes(n: usize) -> u64 {
    (2..=n)
        .map(|level| binom(n - 1, level - 2) * (n - level + 1) as u64)
        .sum()
}

/// Pascal's rule, independent of the crate's table.
pub fn binom(a: usize, b: usize) -> u64 {
    if b > a {
        return 0;
    }
    let mut row = vec![1u64];
    for _ in 0..a {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[b]
}

pub fn bin_path() -> &'static str {
    env!("CARGO_BIN_EXE_tsp-minplus")
}

pub fn data_path(file: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(file)
}
