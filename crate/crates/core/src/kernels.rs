//! Min-plus (tropical) matrix products over saturating integer costs.
//!
//! Every kernel computes `out[i][k] = min_j (a[i][j] + b[j][k])` with the
//! same result bit for bit; they differ only in memory access pattern.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A non-negative integer cost, or infinity.
///
/// `u64::MAX` is reserved as the infinity sentinel. Addition saturates at the
/// sentinel, so infinity absorbs and no finite sum can wrap.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct ExtCost(pub u64);

impl ExtCost {
    pub const INFINITY: ExtCost = ExtCost(u64::MAX);
    pub const ZERO: ExtCost = ExtCost(0);
    /// Exclusive upper bound on finite input weights.
    pub const MAX_INPUT: u64 = 1 << 63;

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    #[inline]
    pub fn finite(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }

    /// Saturating semiring multiplication (ordinary `+`).
    #[inline(always)]
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: ExtCost) -> ExtCost {
        ExtCost(self.0.saturating_add(other.0))
    }

    /// Semiring addition (ordinary `min`); infinity is the identity.
    #[inline(always)]
    pub fn min(self, other: ExtCost) -> ExtCost {
        ExtCost(self.0.min(other.0))
    }
}

impl From<u64> for ExtCost {
    fn from(v: u64) -> Self {
        ExtCost(v)
    }
}

impl fmt::Debug for ExtCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.finite() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("dimension mismatch: {a_rows}x{a_cols} times {b_rows}x{b_cols}")]
    DimensionMismatch {
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
        b_cols: usize,
    },
    #[error("matrix data length {len} does not match {rows}x{cols}")]
    BadShape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("tile size must be at least 1")]
    ZeroTile,
    #[error("unknown kernel `{0}` (known: naive, transposed, tiled)")]
    UnknownKernel(String),
    #[error("tile size only applies to the tiled kernel")]
    TileNotApplicable,
}

/// Dense row-major matrix of [`ExtCost`].
#[derive(Clone, PartialEq, Eq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExtCost>,
}

impl CostMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ExtCost>) -> Result<Self, KernelError> {
        if data.len() != rows * cols {
            return Err(KernelError::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: ExtCost) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// The min-plus identity: zero on the diagonal, infinity elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::filled(n, n, ExtCost::INFINITY);
        for i in 0..n {
            m.set(i, i, ExtCost::ZERO);
        }
        m
    }

    /// Builds a matrix from finite rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&v| ExtCost(v)));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ExtCost {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: ExtCost) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExtCost] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[ExtCost] {
        &self.data
    }

    pub fn view(&self) -> MatrixView<'_> {
        MatrixView {
            rows: self.rows,
            cols: self.cols,
            data: &self.data,
        }
    }

    pub fn transpose(&self) -> CostMatrix {
        let mut t = Self::filled(self.cols, self.rows, ExtCost::INFINITY);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
}

impl fmt::Debug for CostMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_struct("CostMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

/// Borrowed row-major matrix, used so a batch of DP rows can be multiplied
/// in place without copying.
#[derive(Debug, Clone, Copy)]
pub struct MatrixView<'a> {
    pub rows: usize,
    pub cols: usize,
    pub data: &'a [ExtCost],
}

impl<'a> MatrixView<'a> {
    pub fn new(rows: usize, cols: usize, data: &'a [ExtCost]) -> Result<Self, KernelError> {
        if data.len() != rows * cols {
            return Err(KernelError::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    #[inline]
    pub fn row(&self, i: usize) -> &'a [ExtCost] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// Count of scalar (add, min) pairs performed by kernels.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub scalar_ops: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn record_product(&mut self, m: usize, p: usize, q: usize) {
        self.scalar_ops += (m * p * q) as u64;
    }
}

/// A rectangular min-plus product implementation.
pub trait MinPlusKernel: Send + Sync {
    fn name(&self) -> &str;

    /// Writes `a ⊗ b` into `out` (length `a.rows * b.cols`, row-major) and
    /// adds `a.rows * a.cols * b.cols` to `counter`. Shapes are checked by
    /// [`MinPlusKernel::multiply_into`]; implementations may assume them.
    fn product_unchecked(
        &self,
        a: MatrixView<'_>,
        b: MatrixView<'_>,
        out: &mut [ExtCost],
        counter: &mut OpCounter,
    );

    fn multiply_into(
        &self,
        a: MatrixView<'_>,
        b: MatrixView<'_>,
        out: &mut [ExtCost],
        counter: &mut OpCounter,
    ) -> Result<(), KernelError> {
        check_dims(a, b)?;
        if out.len() != a.rows * b.cols {
            return Err(KernelError::BadShape {
                rows: a.rows,
                cols: b.cols,
                len: out.len(),
            });
        }
        self.product_unchecked(a, b, out, counter);
        Ok(())
    }

    fn multiply(
        &self,
        a: &CostMatrix,
        b: &CostMatrix,
        counter: &mut OpCounter,
    ) -> Result<CostMatrix, KernelError> {
        let mut out = vec![ExtCost::INFINITY; a.rows * b.cols];
        self.multiply_into(a.view(), b.view(), &mut out, counter)?;
        CostMatrix::new(a.rows, b.cols, out)
    }
}

fn check_dims(a: MatrixView<'_>, b: MatrixView<'_>) -> Result<(), KernelError> {
    if a.cols != b.rows {
        return Err(KernelError::DimensionMismatch {
            a_rows: a.rows,
            a_cols: a.cols,
            b_rows: b.rows,
            b_cols: b.cols,
        });
    }
    Ok(())
}

/// Loop order i-j-k: each output row starts at infinity and is relaxed by
/// streaming rows of `b`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NaiveKernel;

impl MinPlusKernel for NaiveKernel {
    fn name(&self) -> &str {
        "naive"
    }

    fn product_unchecked(
        &self,
        a: MatrixView<'_>,
        b: MatrixView<'_>,
        out: &mut [ExtCost],
        counter: &mut OpCounter,
    ) {
        let q = b.cols;
        for (i, out_row) in out.chunks_exact_mut(q.max(1)).take(a.rows).enumerate() {
            out_row.fill(ExtCost::INFINITY);
            for (j, &aij) in a.row(i).iter().enumerate() {
                for (o, &bjk) in out_row.iter_mut().zip(b.row(j)) {
                    *o = (*o).min(aij.add(bjk));
                }
            }
        }
        counter.record_product(a.rows, a.cols, q);
    }
}

/// Materializes `bᵀ` once, then loop order i-k-j so that both operands of
/// every inner product are contiguous.
#[derive(Debug, Clone, Copy, Default)]
pub struct TransposedKernel;

impl MinPlusKernel for TransposedKernel {
    fn name(&self) -> &str {
        "transposed"
    }

    fn product_unchecked(
        &self,
        a: MatrixView<'_>,
        b: MatrixView<'_>,
        out: &mut [ExtCost],
        counter: &mut OpCounter,
    ) {
        let p = a.cols;
        let q = b.cols;
        let mut bt = vec![ExtCost::INFINITY; p * q];
        for j in 0..p {
            for k in 0..q {
                bt[k * p + j] = b.data[j * q + k];
            }
        }
        for i in 0..a.rows {
            let a_row = a.row(i);
            for k in 0..q {
                let col = &bt[k * p..(k + 1) * p];
                out[i * q + k] = a_row
                    .iter()
                    .zip(col)
                    .fold(ExtCost::INFINITY, |acc, (&x, &y)| acc.min(x.add(y)));
            }
        }
        counter.record_product(a.rows, p, q);
    }
}

/// Cache-blocked product over `tile × tile × tile` blocks; ragged edge
/// blocks are clipped to the matrix bounds.
#[derive(Debug, Clone, Copy)]
pub struct TiledKernel {
    tile: usize,
}

impl TiledKernel {
    pub const DEFAULT_TILE: usize = 32;

    pub fn new(tile: usize) -> Result<Self, KernelError> {
        if tile == 0 {
            return Err(KernelError::ZeroTile);
        }
        Ok(Self { tile })
    }

    pub fn tile(&self) -> usize {
        self.tile
    }
}

impl Default for TiledKernel {
    fn default() -> Self {
        Self {
            tile: Self::DEFAULT_TILE,
        }
    }
}

impl MinPlusKernel for TiledKernel {
    fn name(&self) -> &str {
        "tiled"
    }

    fn product_unchecked(
        &self,
        a: MatrixView<'_>,
        b: MatrixView<'_>,
        out: &mut [ExtCost],
        counter: &mut OpCounter,
    ) {
        let (m, p, q) = (a.rows, a.cols, b.cols);
        let t = self.tile;
        out[..m * q].fill(ExtCost::INFINITY);
        for i0 in (0..m).step_by(t) {
            let i1 = (i0 + t).min(m);
            for j0 in (0..p).step_by(t) {
                let j1 = (j0 + t).min(p);
                for k0 in (0..q).step_by(t) {
                    let k1 = (k0 + t).min(q);
                    for i in i0..i1 {
                        let out_blk = &mut out[i * q + k0..i * q + k1];
                        let a_blk = &a.data[i * p + j0..i * p + j1];
                        for (j, &aij) in (j0..j1).zip(a_blk) {
                            let b_blk = &b.data[j * q + k0..j * q + k1];
                            for (o, &bjk) in out_blk.iter_mut().zip(b_blk) {
                                *o = (*o).min(aij.add(bjk));
                            }
                        }
                    }
                }
            }
        }
        counter.record_product(m, p, q);
    }
}

/// Names a registered kernel; `tile` applies to `tiled` only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelId {
    pub name: String,
    pub tile: Option<usize>,
}

impl KernelId {
    pub fn naive() -> Self {
        Self::named("naive")
    }

    pub fn transposed() -> Self {
        Self::named("transposed")
    }

    pub fn tiled(tile: usize) -> Self {
        Self {
            name: "tiled".into(),
            tile: Some(tile),
        }
    }

    pub fn named(name: &str) -> Self {
        Self {
            name: name.into(),
            tile: None,
        }
    }

    /// The three built-in kernels, tiled with the default tile.
    pub fn builtins() -> Vec<KernelId> {
        vec![
            Self::naive(),
            Self::transposed(),
            Self::tiled(TiledKernel::DEFAULT_TILE),
        ]
    }

    /// Tile in effect, for reporting: `Some` only for the tiled kernel.
    pub fn effective_tile(&self) -> Option<usize> {
        (self.name == "tiled").then(|| self.tile.unwrap_or(TiledKernel::DEFAULT_TILE))
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tile {
            Some(t) => write!(f, "{}:{}", self.name, t),
            None => f.write_str(&self.name),
        }
    }
}

/// Accepts `naive`, `transposed`, `tiled`, or `tiled:<tile>`.
impl FromStr for KernelId {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, tile) = match s.split_once(':') {
            Some((n, t)) => {
                let t = t
                    .parse()
                    .map_err(|_| KernelError::UnknownKernel(s.to_string()))?;
                (n, Some(t))
            }
            None => (s, None),
        };
        let id = KernelId {
            name: name.to_string(),
            tile,
        };
        kernel_lookup(&id)?;
        Ok(id)
    }
}

/// Resolves a [`KernelId`] to its implementation. New kernels are added here.
pub fn kernel_lookup(id: &KernelId) -> Result<Box<dyn MinPlusKernel>, KernelError> {
    match (id.name.as_str(), id.tile) {
        ("naive", None) => Ok(Box::new(NaiveKernel)),
        ("transposed", None) => Ok(Box::new(TransposedKernel)),
        ("tiled", tile) => Ok(Box::new(TiledKernel::new(
            tile.unwrap_or(TiledKernel::DEFAULT_TILE),
        )?)),
        ("naive" | "transposed", Some(_)) => Err(KernelError::TileNotApplicable),
        (other, _) => Err(KernelError::UnknownKernel(other.to_string())),
    }
}

pub fn minplus_naive(
    a: &CostMatrix,
    b: &CostMatrix,
    counter: &mut OpCounter,
) -> Result<CostMatrix, KernelError> {
    NaiveKernel.multiply(a, b, counter)
}

pub fn minplus_transposed(
    a: &CostMatrix,
    b: &CostMatrix,
    counter: &mut OpCounter,
) -> Result<CostMatrix, KernelError> {
    TransposedKernel.multiply(a, b, counter)
}

pub fn minplus_tiled(
    a: &CostMatrix,
    b: &CostMatrix,
    tile: usize,
    counter: &mut OpCounter,
) -> Result<CostMatrix, KernelError> {
    TiledKernel::new(tile)?.multiply(a, b, counter)
}
