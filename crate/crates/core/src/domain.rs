//! Vertex subsets as bitmasks, colexicographic ranking, and the batch stream
//! that drives the layer-wise solver.
//!
//! Vertex `v` (1-based, as printed to users) lives in bit `v - 1`. A DP layer
//! stores its rows in colex order of the member subsets, so the row of a
//! subset is its colex rank and consecutive batches are contiguous row ranges.

use std::fmt;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_N: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("binomial argument {0} exceeds table bound {MAX_N}")]
    BinomialBound(usize),
    #[error("rank {rank} out of range for {card}-subsets of {n} (count {count})")]
    RankOutOfRange {
        rank: u64,
        card: usize,
        n: usize,
        count: u64,
    },
    #[error("invalid layer: cardinality {card} with n = {n}")]
    InvalidLayer { card: usize, n: usize },
}

/// Pascal's triangle up to row 32, built at compile time.
const BINOMIALS: [[u64; MAX_N + 1]; MAX_N + 1] = {
    let mut t = [[0u64; MAX_N + 1]; MAX_N + 1];
    let mut a = 0;
    while a <= MAX_N {
        t[a][0] = 1;
        let mut b = 1;
        while b <= a {
            t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
            b += 1;
        }
        a += 1;
    }
    t
};

/// Binomial coefficients C(a, b) for `a <= n`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    n: usize,
}

impl BinomialTable {
    pub fn new(n: usize) -> Result<Self, DomainError> {
        if n > MAX_N {
            return Err(DomainError::BinomialBound(n));
        }
        Ok(Self { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// C(a, b), zero when `b > a`. Panics if `a` exceeds the table size.
    pub fn get(&self, a: usize, b: usize) -> u64 {
        assert!(
            a <= self.n,
            "binomial row {a} outside table of size {}",
            self.n
        );
        choose(a, b)
    }
}

/// C(a, b) with the `b > a => 0` convention.
pub fn binomial(a: usize, b: usize) -> Result<u64, DomainError> {
    if a > MAX_N {
        return Err(DomainError::BinomialBound(a));
    }
    Ok(choose(a, b))
}

#[inline]
pub(crate) fn choose(a: usize, b: usize) -> u64 {
    if b > a {
        0
    } else {
        BINOMIALS[a][b]
    }
}

/// A subset of `{1..n}`, vertex `v` stored in bit `v - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The full set `{1..n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_N);
        SubsetMask((1u64 << n) - 1)
    }

    /// Builds a mask from 0-based bit positions.
    pub fn from_bits<I: IntoIterator<Item = usize>>(bits: I) -> Self {
        SubsetMask(bits.into_iter().fold(0, |m, b| m | (1u64 << b)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, bit: usize) -> bool {
        self.0 >> bit & 1 == 1
    }

    #[inline]
    pub fn with(self, bit: usize) -> Self {
        SubsetMask(self.0 | 1 << bit)
    }

    #[inline]
    pub fn without(self, bit: usize) -> Self {
        SubsetMask(self.0 & !(1 << bit))
    }

    /// Set bit positions in ascending order.
    pub fn iter_bits(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(b)
            }
        })
    }

    /// 1-based vertex labels in ascending order.
    pub fn vertices(self) -> Vec<usize> {
        self.iter_bits().map(|b| b + 1).collect()
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

/// Colex rank of a subset among all subsets of the same cardinality:
/// `sum_i C(p_i, i + 1)` over the ascending bit positions `p_i`.
pub fn colex_rank(mask: SubsetMask) -> u64 {
    debug_assert!(!mask.is_empty(), "colex_rank of the empty set");
    mask.iter_bits()
        .enumerate()
        .map(|(i, p)| choose(p, i + 1))
        .sum()
}

/// Inverse of [`colex_rank`] on `card`-subsets of `{0..n-1}`.
pub fn colex_unrank(rank: u64, card: usize, n: usize) -> Result<SubsetMask, DomainError> {
    if n > MAX_N || card > n {
        return Err(DomainError::InvalidLayer { card, n });
    }
    let count = choose(n, card);
    if rank >= count {
        return Err(DomainError::RankOutOfRange {
            rank,
            card,
            n,
            count,
        });
    }
    let mut rest = rank;
    let mut mask = 0u64;
    let mut top = n;
    for t in (1..=card).rev() {
        // Largest p < top with C(p, t) <= rest; p >= t - 1 always qualifies.
        let mut p = top - 1;
        while choose(p, t) > rest {
            p -= 1;
        }
        mask |= 1 << p;
        rest -= choose(p, t);
        top = p;
    }
    Ok(SubsetMask(mask))
}

/// The colex successor with the same cardinality inside the `n`-bit universe
/// (Gosper's hack), or `None` once the last such subset has been reached.
pub fn next_same_cardinality(mask: SubsetMask, n: usize) -> Option<SubsetMask> {
    let x = mask.0;
    if x == 0 {
        return None;
    }
    let low = x & x.wrapping_neg();
    let ripple = x + low;
    let next = (((ripple ^ x) >> 2) / low) | ripple;
    if next >> n != 0 {
        None
    } else {
        Some(SubsetMask(next))
    }
}

/// For a subset `key` of `{0..universe-1}`, yields `(k, colex_rank(key + k))`
/// for every `k` not in `key`, ascending in `k`. Runs in O(universe).
pub fn insertion_ranks(key: SubsetMask, universe: usize) -> impl Iterator<Item = (usize, u64)> {
    let positions: Vec<usize> = key.iter_bits().collect();
    let t = positions.len();
    // high[j] = sum_{i >= j} C(p_i, i + 2): members above an inserted element
    // shift up one index.
    let mut high = vec![0u64; t + 1];
    for j in (0..t).rev() {
        high[j] = high[j + 1] + choose(positions[j], j + 2);
    }
    let mut low = 0u64;
    let mut j = 0usize;
    (0..universe).filter_map(move |k| {
        if j < t && positions[j] == k {
            low += choose(k, j + 1);
            j += 1;
            return None;
        }
        Some((k, low + choose(k, j + 1) + high[j]))
    })
}

/// The subsets of one DP layer and their row numbering.
///
/// In restricted mode only subsets containing vertex 1 (bit 0) are members and
/// the row of a subset is the colex rank of the remaining bits shifted down by
/// one. Because bit 0 is shared by every member this is the same order as the
/// colex order of the full masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerShape {
    pub n: usize,
    pub card: usize,
    pub restricted: bool,
}

impl LayerShape {
    pub fn new(n: usize, card: usize, restricted: bool) -> Result<Self, DomainError> {
        if n == 0 || n > MAX_N || card == 0 || card > n {
            return Err(DomainError::InvalidLayer { card, n });
        }
        Ok(Self {
            n,
            card,
            restricted,
        })
    }

    /// Number of member subsets.
    pub fn row_count(&self) -> u64 {
        if self.restricted {
            choose(self.n - 1, self.card - 1)
        } else {
            choose(self.n, self.card)
        }
    }

    /// Row of a member subset. `mask` must have the layer's cardinality (and
    /// contain bit 0 in restricted mode).
    #[inline]
    pub fn row_of(&self, mask: SubsetMask) -> u64 {
        debug_assert_eq!(mask.cardinality(), self.card);
        if self.restricted {
            debug_assert!(mask.contains(0));
            let key = SubsetMask(mask.0 >> 1);
            if key.is_empty() {
                0
            } else {
                colex_rank(key)
            }
        } else {
            colex_rank(mask)
        }
    }

    /// Member subset stored at `row`.
    pub fn mask_at(&self, row: u64) -> Result<SubsetMask, DomainError> {
        if self.restricted {
            let key = colex_unrank(row, self.card - 1, self.n - 1)?;
            Ok(SubsetMask(key.0 << 1 | 1))
        } else {
            colex_unrank(row, self.card, self.n)
        }
    }

    /// Whether `mask` belongs to this layer.
    pub fn admits(&self, mask: SubsetMask) -> bool {
        mask.cardinality() == self.card
            && mask.0 >> self.n == 0
            && (!self.restricted || mask.contains(0))
    }

    /// For a member `source` of this layer, yields `(k, row)` for every bit
    /// `k` outside `source`, where `row` is the row of `source + k` in the
    /// next layer.
    pub fn successor_rows(&self, source: SubsetMask) -> impl Iterator<Item = (usize, u64)> {
        let (key, universe, shift) = if self.restricted {
            (SubsetMask(source.0 >> 1), self.n - 1, 1)
        } else {
            (source, self.n, 0)
        };
        insertion_ranks(key, universe).map(move |(k, r)| (k + shift, r))
    }
}

/// Up to `n` same-cardinality subsets in strictly increasing colex order,
/// occupying rows `first_row..first_row + members.len()` of their layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Batch {
    pub first_row: u64,
    pub members: Vec<SubsetMask>,
}

impl Batch {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Stream of the batches of one layer. Stateless apart from its cursor, so a
/// range of batches can be produced independently with [`Batches::starting_at`].
#[derive(Debug, Clone)]
pub struct Batches {
    shape: LayerShape,
    next_row: u64,
    end_row: u64,
    cursor: Option<SubsetMask>,
}

impl Batches {
    /// All batches of the `card`-subsets of `{1..n}`; with `restrict_to_v1`
    /// only subsets containing vertex 1 are produced. Requires `1 <= card < n`.
    pub fn new(n: usize, card: usize, restrict_to_v1: bool) -> Result<Self, DomainError> {
        Self::starting_at(n, card, restrict_to_v1, 0)
    }

    /// Like [`Batches::new`] but starting from row `start_row` of the layer.
    pub fn starting_at(
        n: usize,
        card: usize,
        restrict_to_v1: bool,
        start_row: u64,
    ) -> Result<Self, DomainError> {
        if card == 0 || card >= n {
            return Err(DomainError::InvalidLayer { card, n });
        }
        let shape = LayerShape::new(n, card, restrict_to_v1)?;
        let end_row = shape.row_count();
        let cursor = if start_row < end_row {
            Some(shape.mask_at(start_row)?)
        } else {
            None
        };
        Ok(Self {
            shape,
            next_row: start_row,
            end_row,
            cursor,
        })
    }

    pub fn shape(&self) -> LayerShape {
        self.shape
    }

    /// Total number of batches in the layer, `ceil(K / n)`.
    pub fn batch_count(&self) -> u64 {
        self.end_row.div_ceil(self.shape.n as u64)
    }

    fn advance(&self, mask: SubsetMask) -> Option<SubsetMask> {
        if self.shape.restricted {
            let key = SubsetMask(mask.0 >> 1);
            if key.is_empty() {
                return None;
            }
            next_same_cardinality(key, self.shape.n - 1).map(|k| SubsetMask(k.0 << 1 | 1))
        } else {
            next_same_cardinality(mask, self.shape.n)
        }
    }
}

impl Iterator for Batches {
    type Item = Batch;

    fn next(&mut self) -> Option<Batch> {
        let first = self.cursor?;
        let first_row = self.next_row;
        let take = (self.end_row - first_row).min(self.shape.n as u64) as usize;
        let mut members = Vec::with_capacity(take);
        let mut cur = Some(first);
        while members.len() < take {
            let m = cur.expect("subset enumeration ended before the row count");
            members.push(m);
            cur = self.advance(m);
        }
        self.next_row += take as u64;
        self.cursor = if self.next_row < self.end_row {
            cur
        } else {
            None
        };
        Some(Batch { first_row, members })
    }
}
