//! Block Toeplitz matrices: structure detection through the displacement
//! `M - S M S*`, product/difference criteria read off the off-diagonal
//! symbols, and normality of block Toeplitz matrices with diagonal symbols.
//!
//! Block `(i, j)` of a block Toeplitz matrix is the symbol `T_{j-i}`.
//!
//! ```
//! use blocktoep::{Block, BlockToeplitz, Tolerance, C64};
//! use blocktoep::product::{difference_is_toeplitz, product_is_toeplitz};
//!
//! let s = |x: f64| Block::scalar(C64::new(x, 0.0));
//! // lower and upper shifts of order 2
//! let lower = BlockToeplitz::new(2, 1, vec![s(1.0), s(0.0), s(0.0)]).unwrap();
//! let upper = BlockToeplitz::new(2, 1, vec![s(0.0), s(0.0), s(1.0)]).unwrap();
//! let tol = Tolerance::default();
//! assert!(!product_is_toeplitz(&lower, &upper, tol).unwrap());
//! assert!(difference_is_toeplitz(&lower, &upper, &lower, &upper, tol).unwrap());
//! ```

pub mod bench;
pub mod displacement;
pub mod error;
pub mod io;
pub mod linalg;
pub mod normality;
pub mod oracle;
pub mod product;

pub use error::{Error, Result};
pub use linalg::{
    adjoint, block_mul, expand, flatten, grid_mul, unflatten, Block, BlockColumn, BlockGrid, BlockRow,
    BlockToeplitz, BlockVector, DenseMatrix, Tolerance, C64,
};
