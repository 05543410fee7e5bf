#![allow(dead_code)]

use blocktoep::io::Generator;
use blocktoep::{Block, BlockGrid, BlockToeplitz, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn s(x: f64) -> Block {
    Block::scalar(c(x, 0.0))
}

/// Scalar Toeplitz from `a_{-(n-1)} .. a_{n-1}`.
pub fn scalar_toeplitz(symbols: &[f64]) -> BlockToeplitz {
    let n = symbols.len().div_ceil(2);
    BlockToeplitz::new(n, 1, symbols.iter().map(|&x| s(x)).collect()).unwrap()
}

pub fn lower_shift() -> BlockToeplitz {
    scalar_toeplitz(&[1.0, 0.0, 0.0])
}

pub fn upper_shift() -> BlockToeplitz {
    scalar_toeplitz(&[0.0, 0.0, 1.0])
}

/// Random shape with `n <= max_n`, `d <= max_d`.
pub fn shape(g: &mut Generator, max_n: usize, max_d: usize) -> (usize, usize) {
    (1 + g.index(max_n), 1 + g.index(max_d))
}

/// Adds `delta` to entry (0, 0) of block (i, j).
pub fn bump(grid: &BlockGrid, i: usize, j: usize, delta: C64) -> BlockGrid {
    let mut out = grid.clone();
    let b = grid.block(i, j).add(&Block::from_fn(grid.d(), |r, col| {
        if r == 0 && col == 0 {
            delta
        } else {
            c(0.0, 0.0)
        }
    }));
    out.set_block(i, j, b).unwrap();
    out
}
