use crate::domain::{next_same_cardinality, LayerShape, SubsetMask};
use crate::kernels::ExtCost;

use super::{close_tour, DpLayer, DpTable, Instance};

#[derive(Debug, Clone)]
pub struct PullOutcome {
    pub cost: ExtCost,
    /// Every layer, when requested.
    pub table: Option<DpTable>,
}

/// Classic Held-Karp: for each subset `T` containing city 1 and each
/// `k in T \ {1}`, `dp(T, k) = min_j dp(T \ {k}, j) + c(j, k)`.
pub fn held_karp_pull(inst: &Instance, keep_layers: bool) -> PullOutcome {
    let n = inst.n();
    let mut layers = Vec::new();
    let mut prev = DpLayer::base(n, true);

    for card in 2..=n {
        let shape = LayerShape::new(n, card, true).expect("2 <= card <= n");
        let mut cur = DpLayer::infinite(shape);
        let prev_shape = prev.shape();
        {
            let values = cur.values_mut();
            // Members are {1} plus a (card-1)-subset of the other cities.
            let mut key = Some(SubsetMask((1 << (card - 1)) - 1));
            let mut row = 0usize;
            while let Some(k_mask) = key {
                let subset = SubsetMask(k_mask.0 << 1 | 1);
                for k in subset.iter_bits().skip(1) {
                    let rest = subset.without(k);
                    let src = prev.row(prev_shape.row_of(rest) as usize);
                    values[row * n + k] = rest
                        .iter_bits()
                        .map(|j| src[j].add(inst.cost(j, k)))
                        .fold(ExtCost::INFINITY, ExtCost::min);
                }
                row += 1;
                key = next_same_cardinality(k_mask, n - 1);
            }
            debug_assert_eq!(row as u64, shape.row_count());
        }
        let done = std::mem::replace(&mut prev, cur);
        if keep_layers {
            layers.push(done);
        }
    }

    let cost = close_tour(&prev, inst).expect("final layer has cardinality n");
    let table = keep_layers.then(|| {
        layers.push(prev);
        DpTable { layers }
    });
    PullOutcome { cost, table }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{brute_force, reconstruct_tour};

    #[test]
    fn single_city_costs_nothing() {
        let inst = Instance::from_rows(&[[3]]).unwrap();
        let out = held_karp_pull(&inst, true);
        assert_eq!(out.cost, ExtCost(0));
        assert_eq!(out.table.unwrap().layers.len(), 1);
    }

    #[test]
    fn two_cities() {
        let inst = Instance::from_rows(&[[0, 5], [7, 0]]).unwrap();
        assert_eq!(held_karp_pull(&inst, false).cost, ExtCost(12));
    }

    #[test]
    fn four_cities_match_brute_force() {
        let inst =
            Instance::from_rows(&[[0, 1, 15, 6], [2, 0, 7, 3], [9, 6, 0, 12], [10, 4, 8, 0]])
                .unwrap();
        let bf = brute_force(&inst).unwrap();
        // 1 -> 2 -> 4 -> 3 -> 1 costs 1 + 3 + 8 + 9.
        assert_eq!(bf.cost, ExtCost(21));
        let out = held_karp_pull(&inst, true);
        assert_eq!(out.cost, bf.cost);
        let tour = reconstruct_tour(&out.table.unwrap(), &inst).unwrap();
        assert_eq!(tour.cost, bf.cost);
    }

    #[test]
    fn unit_triangle_tie_break() {
        let inst = Instance::from_rows(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]).unwrap();
        let out = held_karp_pull(&inst, true);
        let table = out.table.unwrap();
        let full = table.layer(3).unwrap();
        assert_eq!(full.row(0)[1], ExtCost(2));
        assert_eq!(full.row(0)[2], ExtCost(2));
        // Closing ties pick the smallest last city (2), so the walk back
        // yields 1 -> 3 -> 2.
        assert_eq!(
            reconstruct_tour(&table, &inst).unwrap().order,
            vec![1, 3, 2]
        );
    }
}
