use crate::domain::{LayerShape, SubsetMask};
use crate::kernels::{ExtCost, MatrixView};

use super::{Instance, SolveError, Tour};

/// DP values of one cardinality layer: one row per member subset (in colex
/// order), one column per last city.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpLayer {
    shape: LayerShape,
    values: Vec<ExtCost>,
}

impl DpLayer {
    pub(crate) fn infinite(shape: LayerShape) -> Self {
        let len = shape.row_count() as usize * shape.n;
        Self {
            shape,
            values: vec![ExtCost::INFINITY; len],
        }
    }

    /// The single-city layer holding the base case `dp({1}, 1) = 0`.
    pub(crate) fn base(n: usize, restricted: bool) -> Self {
        let shape = LayerShape::new(n, 1, restricted).expect("n validated by Instance");
        let mut layer = Self::infinite(shape);
        // {1} has colex rank 0 in both numberings.
        layer.values[0] = ExtCost::ZERO;
        layer
    }

    pub fn shape(&self) -> LayerShape {
        self.shape
    }

    pub fn card(&self) -> usize {
        self.shape.card
    }

    pub fn row_count(&self) -> usize {
        self.values.len() / self.shape.n
    }

    pub fn row(&self, r: usize) -> &[ExtCost] {
        let n = self.shape.n;
        &self.values[r * n..(r + 1) * n]
    }

    pub fn values(&self) -> &[ExtCost] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [ExtCost] {
        &mut self.values
    }

    /// Rows `first..first + count` as a matrix.
    pub(crate) fn rows_view(&self, first: usize, count: usize) -> MatrixView<'_> {
        let n = self.shape.n;
        MatrixView {
            rows: count,
            cols: n,
            data: &self.values[first * n..(first + count) * n],
        }
    }

    /// `dp(subset, last)` with `last` 0-based; infinity for subsets the layer
    /// does not store.
    pub fn get(&self, subset: SubsetMask, last: usize) -> ExtCost {
        if !self.shape.admits(subset) {
            return ExtCost::INFINITY;
        }
        let row = self.shape.row_of(subset) as usize;
        self.values[row * self.shape.n + last]
    }

    /// Smallest finite value in the layer.
    pub fn min_finite(&self) -> Option<u64> {
        self.values.iter().filter_map(|v| v.finite()).min()
    }
}

/// All layers of a solve, `layers[c - 1]` holding cardinality `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    pub layers: Vec<DpLayer>,
}

impl DpTable {
    pub fn layer(&self, card: usize) -> Option<&DpLayer> {
        card.checked_sub(1).and_then(|i| self.layers.get(i))
    }

    pub fn get(&self, subset: SubsetMask, last: usize) -> ExtCost {
        self.layer(subset.cardinality())
            .map_or(ExtCost::INFINITY, |l| l.get(subset, last))
    }
}

/// Closes the tour: `min_k dp([n], k) + c(k, 1)` over `k != 1`.
pub fn close_tour(final_layer: &DpLayer, inst: &Instance) -> Result<ExtCost, SolveError> {
    let n = inst.n();
    if final_layer.card() != n || final_layer.shape().n != n {
        return Err(SolveError::LayerMismatch {
            expected: n,
            got: final_layer.card(),
        });
    }
    if n == 1 {
        return Ok(ExtCost::ZERO);
    }
    let full = final_layer.row(0);
    Ok((1..n)
        .map(|k| full[k].add(inst.cost(k, 0)))
        .fold(ExtCost::INFINITY, ExtCost::min))
}

/// Walks the table backwards from the full set to recover an optimal tour.
/// Ties are broken towards the smallest city index.
pub fn reconstruct_tour(table: &DpTable, inst: &Instance) -> Result<Tour, SolveError> {
    let n = inst.n();
    if table.layers.len() != n {
        return Err(SolveError::IncompleteTable {
            expected: n,
            got: table.layers.len(),
        });
    }
    if n == 1 {
        return Tour::new(vec![1], inst);
    }
    let full = SubsetMask::full(n);
    let closing = |k: usize| table.get(full, k).add(inst.cost(k, 0));
    let mut last = (1..n).min_by_key(|&k| (closing(k), k)).expect("n > 1");
    let optimum = closing(last);
    if !optimum.is_finite() {
        return Err(SolveError::NoTour);
    }

    let mut subset = full;
    let mut reversed = vec![last];
    while subset.cardinality() > 1 {
        let target = table.get(subset, last);
        let rest = subset.without(last);
        let prev = rest
            .iter_bits()
            .find(|&j| table.get(rest, j).add(inst.cost(j, last)) == target)
            .ok_or_else(|| SolveError::CorruptTable {
                subset: subset.vertices(),
                last: last + 1,
            })?;
        reversed.push(prev);
        subset = rest;
        last = prev;
    }
    if last != 0 {
        return Err(SolveError::CorruptTable {
            subset: subset.vertices(),
            last: last + 1,
        });
    }
    let order: Vec<usize> = reversed.iter().rev().map(|&v| v + 1).collect();
    let tour = Tour::new(order, inst)?;
    if tour.cost != optimum {
        return Err(SolveError::CorruptTable {
            subset: full.vertices(),
            last: tour.order[n - 1],
        });
    }
    Ok(tour)
}
