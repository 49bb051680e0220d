use crate::domain::MAX_N;
use crate::kernels::{CostMatrix, ExtCost};

use super::SolveError;

/// A TSP instance: `n` cities and a dense, possibly asymmetric cost matrix.
///
/// Diagonal entries must be present but are never read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    costs: CostMatrix,
}

impl Instance {
    pub fn new(costs: CostMatrix) -> Result<Self, SolveError> {
        let n = costs.rows();
        if n == 0 || n > MAX_N {
            return Err(SolveError::InvalidInstance(format!(
                "n = {n} outside 1..={MAX_N}"
            )));
        }
        if costs.cols() != n {
            return Err(SolveError::InvalidInstance(format!(
                "cost matrix is {}x{}, expected square",
                n,
                costs.cols()
            )));
        }
        if let Some((idx, v)) = costs
            .data()
            .iter()
            .enumerate()
            .find(|(_, v)| v.0 >= ExtCost::MAX_INPUT)
        {
            return Err(SolveError::InvalidInstance(format!(
                "weight {v} at ({}, {}) must be below 2^63",
                idx / n + 1,
                idx % n + 1
            )));
        }
        Ok(Self { n, costs })
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, SolveError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.as_ref().len() != n) {
            return Err(SolveError::InvalidInstance(format!(
                "row of length {} in a {n}-city matrix",
                r.as_ref().len()
            )));
        }
        Self::new(CostMatrix::from_rows(rows))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn costs(&self) -> &CostMatrix {
        &self.costs
    }

    /// Cost of the edge from 0-based city `from` to `to`.
    #[inline]
    pub fn cost(&self, from: usize, to: usize) -> ExtCost {
        self.costs.get(from, to)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.cost(i, j) == self.cost(j, i)))
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|i| self.costs.row(i).iter().map(|c| c.0).collect())
            .collect()
    }
}

/// A closed tour given as 1-based city labels starting at city 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    pub order: Vec<usize>,
    pub cost: ExtCost,
}

impl Tour {
    /// Builds a tour from 1-based labels and prices it against `inst`.
    pub fn new(order: Vec<usize>, inst: &Instance) -> Result<Self, SolveError> {
        Self::check_order(&order, inst.n())?;
        let cost = Self::price(&order, inst);
        Ok(Self { order, cost })
    }

    fn check_order(order: &[usize], n: usize) -> Result<(), SolveError> {
        if order.len() != n || order.first() != Some(&1) {
            return Err(SolveError::InvalidInstance(format!(
                "tour {order:?} must list {n} cities starting at 1"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in order {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(SolveError::InvalidInstance(format!(
                    "tour {order:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(())
    }

    /// Sum of edge costs around the closed tour (a single city costs 0).
    pub fn price(order: &[usize], inst: &Instance) -> ExtCost {
        if order.len() < 2 {
            return ExtCost::ZERO;
        }
        order
            .iter()
            .zip(order.iter().cycle().skip(1))
            .fold(ExtCost::ZERO, |acc, (&a, &b)| {
                acc.add(inst.cost(a - 1, b - 1))
            })
    }

    /// Checks the permutation invariants and that `cost` matches the edges.
    pub fn validate(&self, inst: &Instance) -> Result<(), SolveError> {
        Self::check_order(&self.order, inst.n())?;
        let priced = Self::price(&self.order, inst);
        if priced != self.cost {
            return Err(SolveError::InvalidInstance(format!(
                "tour cost {} does not match edge sum {priced}",
                self.cost
            )));
        }
        Ok(())
    }
}
