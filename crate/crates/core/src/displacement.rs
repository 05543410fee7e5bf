//! The displacement operator `M - S M S*` for the block down-shift `S`, its
//! inverse, and the border characterization of block Toeplitz grids.
//!
//! `S` is never formed: conjugation by it is an index shift.

use crate::linalg::{Block, BlockColumn, BlockGrid, BlockToeplitz, BlockVector, Tolerance};

/// `S g S*`: block (i, j) of the result is `g(i-1, j-1)`; the first block row
/// and column are zero.
pub fn shift_down(g: &BlockGrid) -> BlockGrid {
    let d = g.d();
    BlockGrid::from_fn(g.n(), d, |i, j| {
        if i == 0 || j == 0 {
            Block::zeros(d)
        } else {
            g.block(i - 1, j - 1).clone()
        }
    })
}

pub fn displacement(g: &BlockGrid) -> BlockGrid {
    let d = g.d();
    BlockGrid::from_fn(g.n(), d, |i, j| {
        if i == 0 || j == 0 {
            g.block(i, j).clone()
        } else {
            g.block(i, j).sub(g.block(i - 1, j - 1))
        }
    })
}

/// Inverts [`displacement`]: returns `sum_{k<n} S^k dg S^{k*}`.
///
/// Block (i, j) of the sum collects `dg(i-k, j-k)` for every `k` that keeps
/// both indices non-negative, i.e. the running sum down each block diagonal.
pub fn reconstruct(dg: &BlockGrid) -> BlockGrid {
    let (n, d) = (dg.n(), dg.d());
    let mut out = BlockGrid::zeros(n, d);
    for i in 0..n {
        for j in 0..n {
            let acc = if i == 0 || j == 0 {
                dg.block(i, j).clone()
            } else {
                out.block(i - 1, j - 1).add(dg.block(i, j))
            };
            *out.block_mut(i, j) = acc;
        }
    }
    out
}

/// The border factors `X`, `X'` of a block Toeplitz displacement,
/// `Δ(A) = X P+ + P+* X'*` with `P+ = (I, 0, ..., 0)`.
///
/// `X'` has a zero zeroth block, so the (0, 0) slot is carried by `X` alone.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementFactors {
    pub x: BlockColumn,
    pub xprime: BlockColumn,
}

impl DisplacementFactors {
    /// `X P+ + P+* X'*` as a grid.
    pub fn materialize(&self) -> BlockGrid {
        border_grid(&self.x, &self.xprime)
    }

    /// Symbols read back from the factors: `T_{-i} = X_i`, `T_j = X'_j*`.
    pub fn to_toeplitz(&self) -> BlockToeplitz {
        let n = self.x.len();
        BlockToeplitz::from_fn(n, self.x.block_dim(), |k| {
            if k <= 0 {
                self.x.get((-k) as usize).clone()
            } else {
                self.xprime.get(k as usize).adjoint()
            }
        })
    }
}

/// Grid with `col` in the first block column and `rowprime*` in the first
/// block row (entry 0 of `rowprime` ignored).
pub(crate) fn border_grid(col: &BlockVector, rowprime: &BlockVector) -> BlockGrid {
    let (n, d) = (col.len(), col.block_dim());
    BlockGrid::from_fn(n, d, |i, j| {
        if j == 0 {
            col.get(i).clone()
        } else if i == 0 {
            rowprime.get(j).adjoint()
        } else {
            Block::zeros(d)
        }
    })
}

/// Largest entry magnitude of `Δ(g)` outside its first block row and column.
pub fn interior_residual(g: &BlockGrid) -> f64 {
    let n = g.n();
    let mut worst: f64 = 0.0;
    for i in 1..n {
        for j in 1..n {
            worst = worst.max(g.block(i, j).max_abs_diff(g.block(i - 1, j - 1)));
        }
    }
    worst
}

/// Returns the border factors when `Δ(g)` vanishes outside the first block
/// row and column, `None` otherwise.
pub fn toeplitz_factor(g: &BlockGrid, tol: Tolerance) -> Option<DisplacementFactors> {
    let scale = Tolerance::scale([g.max_abs()]);
    if !tol.accepts(interior_residual(g), scale) {
        return None;
    }
    let (n, d) = (g.n(), g.d());
    let x = BlockVector::new(d, (0..n).map(|i| g.block(i, 0).clone()).collect())
        .expect("column of grid blocks");
    let xprime = BlockVector::new(
        d,
        (0..n)
            .map(|j| {
                if j == 0 {
                    Block::zeros(d)
                } else {
                    g.block(0, j).adjoint()
                }
            })
            .collect(),
    )
    .expect("row of grid blocks");
    Some(DisplacementFactors { x, xprime })
}

pub fn is_block_toeplitz(g: &BlockGrid, tol: Tolerance) -> bool {
    toeplitz_factor(g, tol).is_some()
}
