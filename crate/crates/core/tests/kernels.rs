mod common;

use common::{random_matrix, rng};
use proptest::prelude::*;
use rand_core::RngCore;
use tsp_minplus::kernels::{NaiveKernel, TiledKernel, TransposedKernel};
use tsp_minplus::{kernel_lookup, CostMatrix, ExtCost, KernelId, MinPlusKernel, OpCounter};

fn contenders() -> Vec<Box<dyn MinPlusKernel>> {
    let mut ks: Vec<Box<dyn MinPlusKernel>> = vec![Box::new(TransposedKernel)];
    for tile in [1, 8, 32, 1024] {
        ks.push(Box::new(TiledKernel::new(tile).unwrap()));
    }
    ks
}

#[test]
fn cross_kernel_square_and_rectangular() {
    let mut r = rng(2024);
    let ks = contenders();
    for density in [0.0, 0.1, 0.9] {
        for rectangular in [false, true] {
            for _ in 0..100 {
                let n = 1 + (r.next_u64() % 64) as usize;
                let m = if rectangular && n > 1 {
                    1 + (r.next_u64() % (n as u64 - 1)) as usize
                } else {
                    n
                };
                let a = random_matrix(&mut r, m, n, density, 1 << 40);
                let b = random_matrix(&mut r, n, n, density, 1 << 40);
                let mut c0 = OpCounter::new();
                let want = NaiveKernel.multiply(&a, &b, &mut c0).unwrap();
                assert_eq!(c0.scalar_ops, (m * n * n) as u64);
                for k in &ks {
                    let mut c = OpCounter::new();
                    let got = k.multiply(&a, &b, &mut c).unwrap();
                    assert_eq!(got, want, "{} on {m}x{n}, density {density}", k.name());
                    assert_eq!(c.scalar_ops, c0.scalar_ops, "{}", k.name());
                }
            }
        }
    }
}

#[test]
fn tiled_37_with_sparse_infinity() {
    let mut r = rng(37);
    let a = random_matrix(&mut r, 37, 37, 0.1, 1000);
    let b = random_matrix(&mut r, 37, 37, 0.1, 1000);
    let mut c = OpCounter::new();
    let want = NaiveKernel.multiply(&a, &b, &mut c).unwrap();
    let got = TiledKernel::new(8)
        .unwrap()
        .multiply(&a, &b, &mut c)
        .unwrap();
    assert_eq!(got, want);
}

#[test]
fn identity_on_both_sides() {
    let mut r = rng(5);
    for k in KernelId::builtins() {
        let kernel = kernel_lookup(&k).unwrap();
        let a = random_matrix(&mut r, 6, 6, 0.2, 500);
        let id = CostMatrix::identity(6);
        let mut c = OpCounter::new();
        assert_eq!(kernel.multiply(&id, &a, &mut c).unwrap(), a);
        assert_eq!(kernel.multiply(&a, &id, &mut c).unwrap(), a);
    }
}

#[test]
fn associativity_on_small_triples() {
    let mut r = rng(55);
    for k in KernelId::builtins() {
        let kernel = kernel_lookup(&k).unwrap();
        for _ in 0..50 {
            let [a, b, c] = [0, 1, 2].map(|_| random_matrix(&mut r, 5, 5, 0.2, 1 << 20));
            let mut ops = OpCounter::new();
            let left = kernel
                .multiply(&kernel.multiply(&a, &b, &mut ops).unwrap(), &c, &mut ops)
                .unwrap();
            let right = kernel
                .multiply(&a, &kernel.multiply(&b, &c, &mut ops).unwrap(), &mut ops)
                .unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn dimension_mismatch_rejected() {
    let a = CostMatrix::filled(2, 3, ExtCost(1));
    let b = CostMatrix::filled(2, 2, ExtCost(1));
    for k in KernelId::builtins() {
        let mut c = OpCounter::new();
        assert!(kernel_lookup(&k).unwrap().multiply(&a, &b, &mut c).is_err());
        assert_eq!(c.scalar_ops, 0);
    }
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = CostMatrix> {
    let cell = prop_oneof![
        1 => Just(ExtCost::INFINITY),
        4 => (0u64..(1 << 62)).prop_map(ExtCost),
    ];
    proptest::collection::vec(cell, rows * cols)
        .prop_map(move |d| CostMatrix::new(rows, cols, d).unwrap())
}

fn pair_strategy() -> impl Strategy<Value = (CostMatrix, CostMatrix)> {
    (1usize..9, 1usize..9, 1usize..9)
        .prop_flat_map(|(m, p, q)| (matrix_strategy(m, p), matrix_strategy(p, q)))
}

proptest! {
    #[test]
    fn saturation_safety((a, b) in pair_strategy()) {
        let largest = |m: &CostMatrix| m.data().iter().filter_map(|x| x.finite()).max();
        let bound = match (largest(&a), largest(&b)) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        for k in KernelId::builtins() {
            let mut c = OpCounter::new();
            let out = kernel_lookup(&k).unwrap().multiply(&a, &b, &mut c).unwrap();
            prop_assert_eq!(c.scalar_ops, (a.rows() * a.cols() * b.cols()) as u64);
            for i in 0..out.rows() {
                for j in 0..out.cols() {
                    let v = out.get(i, j);
                    // A finite result must come from some finite pair.
                    let finite_pair = (0..a.cols())
                        .any(|t| a.get(i, t).is_finite() && b.get(t, j).is_finite());
                    prop_assert_eq!(v.is_finite(), finite_pair);
                    if let (Some(v), Some(bound)) = (v.finite(), bound) {
                        prop_assert!(v <= bound);
                    }
                }
            }
        }
    }

    #[test]
    fn op_count_for_every_shape(m in 0usize..12, p in 0usize..12, q in 0usize..12) {
        let a = CostMatrix::filled(m, p, ExtCost(3));
        let b = CostMatrix::filled(p, q, ExtCost(4));
        for k in KernelId::builtins().into_iter().chain([KernelId::tiled(1), KernelId::tiled(5)]) {
            let mut c = OpCounter::new();
            let out = kernel_lookup(&k).unwrap().multiply(&a, &b, &mut c).unwrap();
            prop_assert_eq!(c.scalar_ops, (m * p * q) as u64);
            let want = if p == 0 { ExtCost::INFINITY } else { ExtCost(7) };
            prop_assert!(out.data().iter().all(|&x| x == want));
        }
    }
}
