//! Structure of products of block Toeplitz matrices, decided from the
//! off-diagonal symbols alone.
//!
//! For `A = (A_{j-i})` and `B = (B_{j-i})` the displacement of `AB` is a
//! border term plus the "wing gap"
//!
//! ```text
//! G(i, j) = A_{-i} B_j - A_{n-i} B_{j-n},   1 <= i, j <= n-1,
//! ```
//!
//! which is zero on the first block row and column. Since the main
//! diagonal symbols only contribute block Toeplitz terms, `AB - CD` is block
//! Toeplitz exactly when the gaps of `(A, B)` and `(C, D)` coincide, and
//! `AB = CD` when additionally the first block row and column of the two
//! products agree. Every test here costs `O(n^2 d^3)`; no full product is
//! ever formed.

use crate::displacement::border_grid;
use crate::error::Result;
use crate::linalg::{Block, BlockColumn, BlockGrid, BlockRow, BlockToeplitz, BlockVector, Tolerance, C64};

/// The four bordered vectors of a block Toeplitz matrix, each with a zero
/// block in slot 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WingSet {
    /// `(0, A_{-1}, ..., A_{-(n-1)})`
    pub minus_col: BlockColumn,
    /// `(0, A_{n-1}, ..., A_1)`
    pub plus_col: BlockColumn,
    /// `(0, A_1, ..., A_{n-1})`
    pub plus_row: BlockRow,
    /// `(0, A_{1-n}, ..., A_{-1})`
    pub minus_row: BlockRow,
}

fn bordered(n: usize, d: usize, mut f: impl FnMut(isize) -> Block) -> BlockVector {
    let entries = (0..n)
        .map(|i| if i == 0 { Block::zeros(d) } else { f(i as isize) })
        .collect();
    BlockVector::new(d, entries).expect("bordered vector blocks share dimension")
}

pub fn wings(t: &BlockToeplitz) -> WingSet {
    let (n, d) = (t.n(), t.d());
    let m = n as isize;
    WingSet {
        minus_col: bordered(n, d, |i| t.symbol(-i).clone()),
        plus_col: bordered(n, d, |i| t.symbol(m - i).clone()),
        plus_row: bordered(n, d, |j| t.symbol(j).clone()),
        minus_row: bordered(n, d, |j| t.symbol(j - m).clone()),
    }
}

/// `A- B+ - A+ B-` kept in factored form (block rank at most two).
#[derive(Debug, Clone, PartialEq)]
pub struct WingGap {
    pub minus_col: BlockColumn,
    pub plus_col: BlockColumn,
    pub plus_row: BlockRow,
    pub minus_row: BlockRow,
}

impl WingGap {
    pub fn n(&self) -> usize {
        self.minus_col.len()
    }

    pub fn d(&self) -> usize {
        self.minus_col.block_dim()
    }

    /// Block (i, j) of the materialized gap.
    pub fn block(&self, i: usize, j: usize) -> Block {
        let d = self.d();
        if i == 0 || j == 0 {
            return Block::zeros(d);
        }
        let mut out = Block::zeros(d);
        out.add_product(self.minus_col.get(i), self.plus_row.get(j));
        let neg = self.plus_col.get(i).mul_unchecked(self.minus_row.get(j));
        out.sub(&neg)
    }

    /// Writes interior block (i, j), `i, j >= 1`, row-major into `out`.
    fn interior_into(&self, i: usize, j: usize, out: &mut [C64]) {
        let d = self.d();
        out.fill(C64::new(0.0, 0.0));
        let (p, q) = (self.minus_col.get(i).as_slice(), self.plus_row.get(j).as_slice());
        let (u, v) = (self.plus_col.get(i).as_slice(), self.minus_row.get(j).as_slice());
        for r in 0..d {
            let row = &mut out[r * d..(r + 1) * d];
            for k in 0..d {
                let (x, y) = (p[r * d + k], u[r * d + k]);
                for ((o, &qb), &vb) in row.iter_mut().zip(&q[k * d..(k + 1) * d]).zip(&v[k * d..(k + 1) * d]) {
                    *o += x * qb - y * vb;
                }
            }
        }
    }

    pub fn materialize(&self) -> BlockGrid {
        BlockGrid::from_fn(self.n(), self.d(), |i, j| self.block(i, j))
    }

    pub fn max_abs(&self) -> f64 {
        let n = self.n();
        let mut m: f64 = 0.0;
        for i in 1..n {
            for j in 1..n {
                m = m.max(self.block(i, j).max_abs());
            }
        }
        m
    }
}

pub fn wing_gap(a: &BlockToeplitz, b: &BlockToeplitz) -> Result<WingGap> {
    a.check_same_shape(b)?;
    let (wa, wb) = (wings(a), wings(b));
    Ok(WingGap {
        minus_col: wa.minus_col,
        plus_col: wa.plus_col,
        plus_row: wb.plus_row,
        minus_row: wb.minus_row,
    })
}

/// `Δ(AB) = Y P+ + P+* Y'* + gap`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductDisplacement {
    /// First block column of `AB`.
    pub y: BlockColumn,
    /// Adjoints of the first block row of `AB`; slot 0 is zero.
    pub yprime: BlockColumn,
    pub gap: WingGap,
}

impl ProductDisplacement {
    pub fn materialize(&self) -> BlockGrid {
        let border = border_grid(&self.y, &self.yprime);
        border
            .add(&self.gap.materialize())
            .expect("border and gap share shape")
    }
}

/// `(AB)_{i,0} = sum_k A_{k-i} B_{-k}`
fn product_first_column(a: &BlockToeplitz, b: &BlockToeplitz) -> BlockColumn {
    let (n, d) = (a.n(), a.d());
    let entries = (0..n)
        .map(|i| {
            let mut acc = Block::zeros(d);
            for k in 0..n {
                acc.add_product(a.symbol(k as isize - i as isize), b.symbol(-(k as isize)));
            }
            acc
        })
        .collect();
    BlockVector::new(d, entries).expect("product column")
}

/// `(AB)_{0,j} = sum_k A_k B_{j-k}`
fn product_first_row(a: &BlockToeplitz, b: &BlockToeplitz) -> BlockRow {
    let (n, d) = (a.n(), a.d());
    let entries = (0..n)
        .map(|j| {
            let mut acc = Block::zeros(d);
            for k in 0..n {
                acc.add_product(a.symbol(k as isize), b.symbol(j as isize - k as isize));
            }
            acc
        })
        .collect();
    BlockVector::new(d, entries).expect("product row")
}

pub fn product_displacement(a: &BlockToeplitz, b: &BlockToeplitz) -> Result<ProductDisplacement> {
    let gap = wing_gap(a, b)?;
    let y = product_first_column(a, b);
    let row = product_first_row(a, b);
    let d = a.d();
    let yprime = BlockVector::new(
        d,
        row.entries()
            .iter()
            .enumerate()
            .map(|(j, blk)| if j == 0 { Block::zeros(d) } else { blk.adjoint() })
            .collect(),
    )
    .expect("product row adjoints");
    Ok(ProductDisplacement { y, yprime, gap })
}

/// Outcome of comparing two wing gaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapComparison {
    /// Largest entry magnitude of the difference of the two gaps.
    pub residual: f64,
    /// `max(1, largest gap entry)` over both gaps.
    pub scale: f64,
    pub holds: bool,
}

/// Largest `metric` of the lhs/rhs gap entries and of their differences.
fn gap_extremes(lhs: &WingGap, rhs: Option<&WingGap>, metric: fn(&C64) -> f64) -> (f64, f64) {
    let (n, d) = (lhs.n(), lhs.d());
    let mut l = vec![C64::new(0.0, 0.0); d * d];
    let mut r = l.clone();
    let mut residual: f64 = 0.0;
    let mut magnitude: f64 = 0.0;
    for i in 1..n {
        for j in 1..n {
            lhs.interior_into(i, j, &mut l);
            match rhs {
                Some(rhs) => {
                    rhs.interior_into(i, j, &mut r);
                    for (x, y) in l.iter().zip(&r) {
                        magnitude = magnitude.max(metric(x)).max(metric(y));
                        residual = residual.max(metric(&(x - y)));
                    }
                }
                None => {
                    for x in &l {
                        magnitude = magnitude.max(metric(x));
                    }
                    residual = magnitude;
                }
            }
        }
    }
    (residual, magnitude)
}

fn compare_gaps(lhs: &WingGap, rhs: Option<&WingGap>, tol: Tolerance) -> GapComparison {
    // squared moduli avoid a hypot per entry; redo with norm() if they overflow
    let (mut residual, mut magnitude) = gap_extremes(lhs, rhs, |z| z.norm_sqr());
    if magnitude.is_finite() && residual.is_finite() {
        residual = residual.sqrt();
        magnitude = magnitude.sqrt();
    } else {
        (residual, magnitude) = gap_extremes(lhs, rhs, |z| z.norm());
    }
    let scale = Tolerance::scale([magnitude]);
    GapComparison {
        residual,
        scale,
        holds: tol.accepts(residual, scale),
    }
}

/// Gap of `(a, b)` against zero.
pub fn product_gap_check(a: &BlockToeplitz, b: &BlockToeplitz, tol: Tolerance) -> Result<GapComparison> {
    Ok(compare_gaps(&wing_gap(a, b)?, None, tol))
}

/// Gap of `(a, b)` against gap of `(c, d)`.
pub fn difference_gap_check(
    a: &BlockToeplitz,
    b: &BlockToeplitz,
    c: &BlockToeplitz,
    d: &BlockToeplitz,
    tol: Tolerance,
) -> Result<GapComparison> {
    a.check_same_shape(c)?;
    let left = wing_gap(a, b)?;
    let right = wing_gap(c, d)?;
    Ok(compare_gaps(&left, Some(&right), tol))
}

/// Is `AB` block Toeplitz?
pub fn product_is_toeplitz(a: &BlockToeplitz, b: &BlockToeplitz, tol: Tolerance) -> Result<bool> {
    Ok(product_gap_check(a, b, tol)?.holds)
}

/// Is `AB - CD` block Toeplitz?
pub fn difference_is_toeplitz(
    a: &BlockToeplitz,
    b: &BlockToeplitz,
    c: &BlockToeplitz,
    d: &BlockToeplitz,
    tol: Tolerance,
) -> Result<bool> {
    Ok(difference_gap_check(a, b, c, d, tol)?.holds)
}

/// Outcome of the `AB = CD` test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualityCheck {
    pub gap: GapComparison,
    /// Largest border discrepancy between the two products (`Y - Z`, `Y' - Z'`).
    pub border_residual: f64,
    pub border_scale: f64,
    pub holds: bool,
}

pub fn products_equal_check(
    a: &BlockToeplitz,
    b: &BlockToeplitz,
    c: &BlockToeplitz,
    d: &BlockToeplitz,
    tol: Tolerance,
) -> Result<EqualityCheck> {
    let gap = difference_gap_check(a, b, c, d, tol)?;
    // Only the border is needed; the gaps were compared above.
    let (y, row_ab) = (product_first_column(a, b), product_first_row(a, b));
    let (z, row_cd) = (product_first_column(c, d), product_first_row(c, d));
    let border_residual = y.max_abs_diff(&z).max(row_ab.max_abs_diff(&row_cd));
    let border_scale = Tolerance::scale([y.max_abs(), z.max_abs(), row_ab.max_abs(), row_cd.max_abs()]);
    let holds = gap.holds && tol.accepts(border_residual, border_scale);
    Ok(EqualityCheck {
        gap,
        border_residual,
        border_scale,
        holds,
    })
}

/// Is `AB = CD`?
pub fn products_equal(
    a: &BlockToeplitz,
    b: &BlockToeplitz,
    c: &BlockToeplitz,
    d: &BlockToeplitz,
    tol: Tolerance,
) -> Result<bool> {
    Ok(products_equal_check(a, b, c, d, tol)?.holds)
}
