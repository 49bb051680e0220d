//! How one DP layer is laid out: colex ranks, Gosper successors, and the
//! batches of `n` rows that feed each min-plus product.

use tsp_minplus::domain::{colex_rank, colex_unrank, next_same_cardinality, Batches, LayerShape};
use tsp_minplus::SubsetMask;

fn main() {
    let n = 6;

    println!("2-subsets of 6 cities in colex order:");
    let mut mask = Some(SubsetMask(0b11));
    while let Some(m) = mask {
        println!("  rank {:>2}  {:?}", colex_rank(m), m);
        assert_eq!(colex_unrank(colex_rank(m), 2, n).unwrap(), m);
        mask = next_same_cardinality(m, n);
    }

    // Restricted layers only hold subsets that contain city 1.
    let shape = LayerShape::new(n, 3, true).unwrap();
    println!(
        "\nlayer of cardinality 3, restricted: {} rows",
        shape.row_count()
    );
    let source = shape.mask_at(4).unwrap();
    println!("row 4 is {source:?}; pushing it reaches:");
    for (k, row) in shape.successor_rows(source) {
        println!("  last city {} -> row {row} of the next layer", k + 1);
    }

    let batches = Batches::new(n, 3, true).unwrap();
    println!("\n{} batches:", batches.batch_count());
    for b in batches {
        println!("  rows {}..{}", b.first_row, b.first_row + b.len() as u64);
    }
}
