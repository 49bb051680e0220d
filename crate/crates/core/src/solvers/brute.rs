use super::{Instance, SolveError, Tour};

/// Largest `n` accepted by [`brute_force`] (9! tours).
pub const BRUTE_FORCE_MAX_N: usize = 10;

/// Tries every tour that starts at city 1. Among optimal tours the
/// lexicographically smallest order wins.
pub fn brute_force(inst: &Instance) -> Result<Tour, SolveError> {
    let n = inst.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(SolveError::TooLargeForBruteForce {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let mut order: Vec<usize> = (1..=n).collect();
    let mut best = Tour::new(order.clone(), inst)?;
    while next_permutation(&mut order[1..]) {
        let cost = Tour::price(&order, inst);
        if cost < best.cost {
            best = Tour {
                order: order.clone(),
                cost,
            };
        }
    }
    Ok(best)
}

/// Rearranges `v` into its lexicographic successor; false once `v` is the
/// last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
