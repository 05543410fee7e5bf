//! Complex block arithmetic and the conversions between structured and dense
//! representations.
//!
//! Layout conventions:
//!
//! * a [`Block`] is a `d x d` complex matrix stored row-major;
//! * a [`BlockGrid`] is an `n x n` grid of blocks, row-major by block index;
//! * a [`BlockToeplitz`] stores the `2n - 1` symbols `T_{-(n-1)} .. T_{n-1}`
//!   and its grid carries `T_{j-i}` at block position `(i, j)`, so positive
//!   indices sit above the main diagonal.
//!
//! Flattening places block `(i, j)` entry `(r, c)` at dense position
//! `(i * d + r, j * d + c)`.

use num_complex::Complex64;

use crate::error::{mismatch, Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Builds a complex number, rejecting NaN and infinities.
pub fn complex(re: f64, im: f64) -> Result<C64> {
    if re.is_finite() && im.is_finite() {
        Ok(C64::new(re, im))
    } else {
        Err(Error::NonFinite(format!("({re}, {im})")))
    }
}

fn check_finite(values: &[C64], what: &str) -> Result<()> {
    match values.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(p) => Err(Error::NonFinite(format!("{what} entry {p}"))),
        None => Ok(()),
    }
}

/// Relative comparison threshold.
///
/// A residual `r` is accepted when `r <= eps * scale`, where the scale is
/// `max(1, largest entry magnitude among the operands)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Self { eps })
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `max(1, m)` over the given magnitudes.
    pub fn scale<I: IntoIterator<Item = f64>>(magnitudes: I) -> f64 {
        magnitudes.into_iter().fold(1.0, f64::max)
    }

    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.eps * scale
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
        }
    }
}

/// A square `d x d` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    dim: usize,
    data: Vec<C64>,
}

impl Block {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "block dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut b = Self::zeros(dim);
        for k in 0..dim {
            b.data[k * dim + k] = ONE;
        }
        b
    }

    pub fn scalar(z: C64) -> Self {
        Self {
            dim: 1,
            data: vec![z],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(dim >= 1, "block dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Row-major entries; must hold `dim * dim` finite values.
    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptySize("block dimension"));
        }
        if data.len() != dim * dim {
            return Err(mismatch(format!(
                "block of dimension {dim} needs {} entries, got {}",
                dim * dim,
                data.len()
            )));
        }
        check_finite(&data, "block")?;
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(r) = rows.iter().position(|r| r.len() != dim) {
            return Err(mismatch(format!("block row {r} is not of length {dim}")));
        }
        Self::from_row_major(dim, rows.into_iter().flatten().collect())
    }

    pub fn from_diagonal(diag: &[C64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptySize("block dimension"));
        }
        check_finite(diag, "diagonal")?;
        let dim = diag.len();
        Ok(Self::from_fn(dim, |r, c| if r == c { diag[r] } else { ZERO }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|k| self.get(k, k)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self.get(r, c) == ZERO))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn matmul(&self, rhs: &Block) -> Result<Block> {
        if self.dim != rhs.dim {
            return Err(mismatch(format!(
                "block product {}x{} by {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Block) -> Block {
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * d..(k + 1) * d];
                for (o, b) in out[r * d..(r + 1) * d].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Block { dim: d, data: out }
    }

    /// `self += lhs * rhs`, all of the same dimension.
    pub(crate) fn add_product(&mut self, lhs: &Block, rhs: &Block) {
        let d = self.dim;
        for r in 0..d {
            for k in 0..d {
                let a = lhs.data[r * d + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..d {
                    self.data[r * d + c] += a * rhs.data[k * d + c];
                }
            }
        }
    }

    pub(crate) fn zip_with(&self, rhs: &Block, f: impl Fn(C64, C64) -> C64) -> Block {
        assert_eq!(self.dim, rhs.dim, "block dimension mismatch");
        Block {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Block) -> Block {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Block) -> Block {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale_by(&self, z: C64) -> Block {
        Block {
            dim: self.dim,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    /// Largest entry magnitude of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Block) -> f64 {
        assert_eq!(self.dim, rhs.dim, "block dimension mismatch");
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

/// Standard `d x d` complex product.
pub fn block_mul(a: &Block, b: &Block) -> Result<Block> {
    a.matmul(b)
}

/// A column or row of `n` blocks of common dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockVector {
    d: usize,
    entries: Vec<Block>,
}

/// `n x 1` block matrix.
pub type BlockColumn = BlockVector;
/// `1 x n` block matrix.
pub type BlockRow = BlockVector;

impl BlockVector {
    pub fn new(d: usize, entries: Vec<Block>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySize("block vector length"));
        }
        if let Some(k) = entries.iter().position(|b| b.dim() != d) {
            return Err(mismatch(format!("block vector entry {k} is not {d}x{d}")));
        }
        Ok(Self { d, entries })
    }

    pub fn zeros(n: usize, d: usize) -> Self {
        Self {
            d,
            entries: vec![Block::zeros(d); n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn block_dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, k: usize) -> &Block {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[Block] {
        &self.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, b| m.max(b.max_abs()))
    }

    pub fn max_abs_diff(&self, rhs: &BlockVector) -> f64 {
        self.entries
            .iter()
            .zip(&rhs.entries)
            .fold(0.0, |m, (a, b)| m.max(a.max_abs_diff(b)))
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(mismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        check_finite(&data, "matrix")?;
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, z: C64) {
        self.data[r * self.cols + c] = z;
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, rhs: &DenseMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

/// A general `n x n` grid of `d x d` blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGrid {
    n: usize,
    d: usize,
    blocks: Vec<Block>,
}

impl BlockGrid {
    pub fn zeros(n: usize, d: usize) -> Self {
        assert!(n >= 1 && d >= 1, "grid sizes must be positive");
        Self {
            n,
            d,
            blocks: vec![Block::zeros(d); n * n],
        }
    }

    pub fn identity(n: usize, d: usize) -> Self {
        Self::from_fn(n, d, |i, j| {
            if i == j {
                Block::identity(d)
            } else {
                Block::zeros(d)
            }
        })
    }

    /// Panics if `f` returns a block of the wrong dimension.
    pub fn from_fn(n: usize, d: usize, mut f: impl FnMut(usize, usize) -> Block) -> Self {
        assert!(n >= 1 && d >= 1, "grid sizes must be positive");
        let mut blocks = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let b = f(i, j);
                assert_eq!(b.dim(), d, "block ({i},{j}) has wrong dimension");
                blocks.push(b);
            }
        }
        Self { n, d, blocks }
    }

    /// Row-major by block index.
    pub fn from_blocks(n: usize, d: usize, blocks: Vec<Block>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySize("n"));
        }
        if d == 0 {
            return Err(Error::EmptySize("d"));
        }
        if blocks.len() != n * n {
            return Err(mismatch(format!(
                "grid of order {n} needs {} blocks, got {}",
                n * n,
                blocks.len()
            )));
        }
        if let Some(k) = blocks.iter().position(|b| b.dim() != d) {
            return Err(mismatch(format!(
                "block ({}, {}) is not {d}x{d}",
                k / n,
                k % n
            )));
        }
        Ok(Self { n, d, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn block(&self, i: usize, j: usize) -> &Block {
        &self.blocks[i * self.n + j]
    }

    pub(crate) fn block_mut(&mut self, i: usize, j: usize) -> &mut Block {
        &mut self.blocks[i * self.n + j]
    }

    pub fn set_block(&mut self, i: usize, j: usize, b: Block) -> Result<()> {
        if b.dim() != self.d {
            return Err(mismatch(format!("block is {0}x{0}, grid needs {1}x{1}", b.dim(), self.d)));
        }
        *self.block_mut(i, j) = b;
        Ok(())
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().fold(0.0, |m, b| m.max(b.max_abs()))
    }

    pub fn max_abs_diff(&self, rhs: &BlockGrid) -> f64 {
        assert_eq!((self.n, self.d), (rhs.n, rhs.d), "grid shape mismatch");
        self.blocks
            .iter()
            .zip(&rhs.blocks)
            .fold(0.0, |m, (a, b)| m.max(a.max_abs_diff(b)))
    }

    fn check_same_shape(&self, rhs: &BlockGrid) -> Result<()> {
        if (self.n, self.d) != (rhs.n, rhs.d) {
            return Err(mismatch(format!(
                "grids of shape (n={}, d={}) and (n={}, d={})",
                self.n, self.d, rhs.n, rhs.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &BlockGrid) -> Result<BlockGrid> {
        self.check_same_shape(rhs)?;
        Ok(self.zip_blocks(rhs, Block::add))
    }

    pub fn sub(&self, rhs: &BlockGrid) -> Result<BlockGrid> {
        self.check_same_shape(rhs)?;
        Ok(self.zip_blocks(rhs, Block::sub))
    }

    fn zip_blocks(&self, rhs: &BlockGrid, f: impl Fn(&Block, &Block) -> Block) -> BlockGrid {
        BlockGrid {
            n: self.n,
            d: self.d,
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Block (i, j) of the result is the conjugate transpose of block (j, i).
    pub fn adjoint(&self) -> BlockGrid {
        BlockGrid::from_fn(self.n, self.d, |i, j| self.block(j, i).adjoint())
    }

    pub fn flatten(&self) -> DenseMatrix {
        let (n, d) = (self.n, self.d);
        DenseMatrix::from_fn(n * d, n * d, |r, c| {
            self.block(r / d, c / d).get(r % d, c % d)
        })
    }

    pub fn unflatten(m: &DenseMatrix, n: usize, d: usize) -> Result<BlockGrid> {
        if n == 0 || d == 0 {
            return Err(Error::EmptySize("n and d"));
        }
        if m.rows() != n * d || m.cols() != n * d {
            return Err(mismatch(format!(
                "{}x{} matrix cannot be split into {n}x{n} blocks of size {d}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(BlockGrid::from_fn(n, d, |i, j| {
            Block::from_fn(d, |r, c| m.get(i * d + r, j * d + c))
        }))
    }
}

/// Block matrix product; block (i, j) is `sum_k g1(i, k) * g2(k, j)`.
pub fn grid_mul(g1: &BlockGrid, g2: &BlockGrid) -> Result<BlockGrid> {
    g1.check_same_shape(g2)?;
    let (n, d) = (g1.n, g1.d);
    let mut out = BlockGrid::zeros(n, d);
    for i in 0..n {
        for k in 0..n {
            let a = g1.block(i, k);
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                out.block_mut(i, j).add_product(a, g2.block(k, j));
            }
        }
    }
    Ok(out)
}

pub fn adjoint(g: &BlockGrid) -> BlockGrid {
    g.adjoint()
}

pub fn flatten(g: &BlockGrid) -> DenseMatrix {
    g.flatten()
}

pub fn unflatten(m: &DenseMatrix, n: usize, d: usize) -> Result<BlockGrid> {
    BlockGrid::unflatten(m, n, d)
}

/// Block Toeplitz matrix given by its `2n - 1` symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockToeplitz {
    n: usize,
    d: usize,
    // symbols[k + n - 1] = T_k
    symbols: Vec<Block>,
}

impl BlockToeplitz {
    /// `symbols` lists `T_{-(n-1)}, ..., T_{n-1}` in order.
    pub fn new(n: usize, d: usize, symbols: Vec<Block>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySize("n"));
        }
        if d == 0 {
            return Err(Error::EmptySize("d"));
        }
        if symbols.len() != 2 * n - 1 {
            return Err(mismatch(format!(
                "order {n} needs {} symbols, got {}",
                2 * n - 1,
                symbols.len()
            )));
        }
        if let Some(p) = symbols.iter().position(|b| b.dim() != d) {
            return Err(mismatch(format!(
                "symbol {} is not {d}x{d}",
                p as isize - (n as isize - 1)
            )));
        }
        Ok(Self { n, d, symbols })
    }

    pub fn from_fn(n: usize, d: usize, mut f: impl FnMut(isize) -> Block) -> Self {
        let m = n as isize - 1;
        let symbols: Vec<Block> = (-m..=m).map(&mut f).collect();
        Self::new(n, d, symbols).expect("symbol generator produced inconsistent blocks")
    }

    pub fn zeros(n: usize, d: usize) -> Self {
        Self::from_fn(n, d, |_| Block::zeros(d))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `T_k` for `|k| < n`.
    pub fn symbol(&self, k: isize) -> &Block {
        let m = self.n as isize - 1;
        assert!(-m <= k && k <= m, "symbol index {k} out of range for n = {}", self.n);
        &self.symbols[(k + m) as usize]
    }

    pub fn symbols(&self) -> &[Block] {
        &self.symbols
    }

    pub fn max_abs(&self) -> f64 {
        self.symbols.iter().fold(0.0, |m, b| m.max(b.max_abs()))
    }

    /// Same off-diagonal symbols, main diagonal replaced.
    pub fn with_main_diagonal(&self, t0: Block) -> Result<Self> {
        let mut symbols = self.symbols.clone();
        symbols[self.n - 1] = t0;
        Self::new(self.n, self.d, symbols)
    }

    pub fn expand(&self) -> BlockGrid {
        BlockGrid::from_fn(self.n, self.d, |i, j| {
            self.symbol(j as isize - i as isize).clone()
        })
    }

    pub(crate) fn check_same_shape(&self, rhs: &BlockToeplitz) -> Result<()> {
        if (self.n, self.d) != (rhs.n, rhs.d) {
            return Err(mismatch(format!(
                "block Toeplitz operands of shape (n={}, d={}) and (n={}, d={})",
                self.n, self.d, rhs.n, rhs.d
            )));
        }
        Ok(())
    }
}

pub fn expand(t: &BlockToeplitz) -> BlockGrid {
    t.expand()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn test_block(d: usize, seed: u64) -> Block {
        let mut s = seed;
        Block::from_fn(d, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((s >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            let im = ((s >> 13 & 0xfffff) as f64 / (1u64 << 20) as f64) - 0.5;
            c(re, im)
        })
    }

    #[test]
    fn identity_times_block_is_block() {
        let x = test_block(3, 7);
        assert_eq!(block_mul(&Block::identity(3), &x).unwrap(), x);
        assert_eq!(block_mul(&x, &Block::identity(3)).unwrap(), x);
    }

    #[test]
    fn scalar_block_product() {
        let p = block_mul(&Block::scalar(c(2.0, 1.0)), &Block::scalar(c(3.0, 0.0))).unwrap();
        assert_eq!(p.get(0, 0), c(6.0, 3.0));
    }

    #[test]
    fn block_product_matches_triple_loop() {
        let (a, b) = (test_block(3, 1), test_block(3, 2));
        let p = block_mul(&a, &b).unwrap();
        for r in 0..3 {
            for col in 0..3 {
                let mut s = ZERO;
                for k in 0..3 {
                    s += a.get(r, k) * b.get(k, col);
                }
                assert!((p.get(r, col) - s).norm() <= 1e-15);
            }
        }
    }

    #[test]
    fn block_product_dimension_mismatch() {
        let err = block_mul(&Block::zeros(2), &Block::zeros(3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(complex(f64::NAN, 0.0).is_err());
        assert!(Block::from_row_major(1, vec![c(f64::INFINITY, 0.0)]).is_err());
        assert!(DenseMatrix::from_row_major(1, 1, vec![c(0.0, f64::NAN)]).is_err());
    }

    #[test]
    fn tolerance_rejects_negative() {
        assert!(Tolerance::new(-1.0).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
        assert_eq!(Tolerance::default().eps(), 1e-9);
        assert_eq!(Tolerance::scale([0.5, 0.25]), 1.0);
        assert_eq!(Tolerance::scale([3.0, 0.25]), 3.0);
    }

    #[test]
    fn grid_times_identity() {
        let g = BlockGrid::from_fn(3, 2, |i, j| test_block(2, (i * 3 + j) as u64));
        assert_eq!(grid_mul(&g, &BlockGrid::identity(3, 2)).unwrap(), g);
    }

    #[test]
    fn lower_shift_times_upper_shift() {
        let lower = BlockGrid::from_fn(2, 1, |i, j| Block::scalar(if i == 1 && j == 0 { ONE } else { ZERO }));
        let upper = lower.adjoint();
        let p = grid_mul(&lower, &upper).unwrap();
        let expected = BlockGrid::from_fn(2, 1, |i, j| Block::scalar(if i == 1 && j == 1 { ONE } else { ZERO }));
        assert_eq!(p, expected);
    }

    #[test]
    fn grid_mul_shape_mismatch() {
        assert!(grid_mul(&BlockGrid::zeros(2, 1), &BlockGrid::zeros(3, 1)).is_err());
        assert!(grid_mul(&BlockGrid::zeros(2, 1), &BlockGrid::zeros(2, 2)).is_err());
    }

    #[test]
    fn hermitian_grid_is_self_adjoint() {
        let h = BlockGrid::from_fn(2, 2, |i, j| {
            Block::from_fn(2, |r, col| {
                let (gi, gj) = (i * 2 + r, j * 2 + col);
                if gi == gj {
                    c(gi as f64, 0.0)
                } else if gi < gj {
                    c(gi as f64 + 1.0, gj as f64)
                } else {
                    c(gj as f64 + 1.0, -(gi as f64))
                }
            })
        });
        assert_eq!(h.adjoint(), h);
        let g = BlockGrid::from_fn(3, 2, |i, j| test_block(2, (i + 5 * j) as u64));
        assert_eq!(g.adjoint().adjoint(), g);
    }

    #[test]
    fn expand_scalar_example() {
        // symbols a_{-2}..a_2 = 1..5
        let t = BlockToeplitz::new(3, 1, (1..=5).map(|k| Block::scalar(c(k as f64, 0.0))).collect()).unwrap();
        let m = t.expand().flatten();
        let expected = [[3.0, 4.0, 5.0], [2.0, 3.0, 4.0], [1.0, 2.0, 3.0]];
        for r in 0..3 {
            for col in 0..3 {
                assert_eq!(m.get(r, col), c(expected[r][col], 0.0));
            }
        }
    }

    #[test]
    fn expand_single_block() {
        let b = test_block(3, 11);
        let t = BlockToeplitz::new(1, 3, vec![b.clone()]).unwrap();
        let g = t.expand();
        assert_eq!(g.n(), 1);
        assert_eq!(g.block(0, 0), &b);
    }

    #[test]
    fn toeplitz_symbol_count_checked() {
        assert!(BlockToeplitz::new(2, 1, vec![Block::zeros(1); 2]).is_err());
        assert!(BlockToeplitz::new(2, 2, vec![Block::zeros(1); 3]).is_err());
        assert!(BlockToeplitz::new(0, 1, vec![]).is_err());
    }

    #[test]
    fn unflatten_rejects_bad_shape() {
        assert!(BlockGrid::unflatten(&DenseMatrix::zeros(4, 4), 3, 1).is_err());
        assert!(BlockGrid::unflatten(&DenseMatrix::zeros(4, 3), 2, 2).is_err());
    }
}
