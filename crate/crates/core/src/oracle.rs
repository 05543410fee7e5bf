//! Brute-force dense counterparts of the structured predicates.
//!
//! Everything here works on explicit `nd x nd` matrices with triple-loop
//! products and materialized shift/permutation matrices. Nothing calls into
//! the displacement, product or normality code paths.

use crate::error::{mismatch, Error, Result};
use crate::linalg::{BlockGrid, BlockToeplitz, DenseMatrix, Tolerance, C64, ONE, ZERO};
use crate::normality::DiagonalBlockToeplitz;

/// Dense-path cap on `n * d`.
pub const DENSE_CAP: usize = 512;

pub fn dense_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols() != b.rows() {
        return Err(mismatch(format!(
            "dense product {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (rows, inner, cols) = (a.rows(), a.cols(), b.cols());
    let (ad, bd) = (a.as_slice(), b.as_slice());
    let mut out = vec![ZERO; rows * cols];
    for i in 0..rows {
        let orow = &mut out[i * cols..(i + 1) * cols];
        for k in 0..inner {
            let x = ad[i * inner + k];
            let brow = &bd[k * cols..(k + 1) * cols];
            for j in 0..cols {
                orow[j] += x * brow[j];
            }
        }
    }
    DenseMatrix::from_row_major(rows, cols, out)
}

pub fn dense_adjoint(m: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(m.cols(), m.rows(), |r, c| m.get(c, r).conj())
}

pub fn dense_sub(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(a.rows(), a.cols(), |r, c| a.get(r, c) - b.get(r, c))
}

/// `nd x nd` matrix with `d x d` identities on the first block subdiagonal.
pub fn dense_shift_matrix(n: usize, d: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n * d, n * d, |r, c| if r == c + d { ONE } else { ZERO })
}

/// `M - S M S*` with an explicit `S`.
pub fn dense_displacement(m: &DenseMatrix, n: usize, d: usize) -> Result<DenseMatrix> {
    let s = dense_shift_matrix(n, d);
    let sms = dense_mul(&dense_mul(&s, m)?, &dense_adjoint(&s))?;
    Ok(dense_sub(m, &sms))
}

/// Dense matrix of a block Toeplitz operand, entry by entry.
pub fn dense_toeplitz(t: &BlockToeplitz) -> DenseMatrix {
    let d = t.d();
    DenseMatrix::from_fn(t.n() * d, t.n() * d, |r, c| {
        let k = (c / d) as isize - (r / d) as isize;
        t.symbol(k).get(r % d, c % d)
    })
}

fn max_abs(m: &DenseMatrix) -> f64 {
    m.as_slice().iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Largest deviation of any block from the first block of its block diagonal.
pub fn diagonal_scan_residual(m: &DenseMatrix, n: usize, d: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            // first block on diagonal j - i
            let (i0, j0) = if i <= j { (0, j - i) } else { (i - j, 0) };
            for r in 0..d {
                for c in 0..d {
                    let here = m.get(i * d + r, j * d + c);
                    let there = m.get(i0 * d + r, j0 * d + c);
                    worst = worst.max((here - there).norm());
                }
            }
        }
    }
    worst
}

/// True iff all blocks with equal `j - i` agree within tolerance.
pub fn diagonal_scan_is_toeplitz(g: &BlockGrid, tol: Tolerance) -> bool {
    let (n, d) = (g.n(), g.d());
    // Read blocks straight from the grid into a dense buffer.
    let m = DenseMatrix::from_fn(n * d, n * d, |r, c| g.block(r / d, c / d).get(r % d, c % d));
    let scale = Tolerance::scale([max_abs(&m)]);
    tol.accepts(diagonal_scan_residual(&m, n, d), scale)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Toeplitz,
    Equal,
}

/// Dense verdict with the numbers behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseVerdict {
    pub holds: bool,
    pub residual: f64,
    pub scale: f64,
}

/// Forms `AB - CD` densely and tests it for block Toeplitz structure or for
/// vanishing. The scale is `max(1, |AB|, |CD|)`.
pub fn dense_product_verdict(
    a: &BlockToeplitz,
    b: &BlockToeplitz,
    c: &BlockToeplitz,
    d: &BlockToeplitz,
    mode: CheckMode,
    tol: Tolerance,
) -> Result<DenseVerdict> {
    let (n, bd) = (a.n(), a.d());
    for t in [b, c, d] {
        if (t.n(), t.d()) != (n, bd) {
            return Err(mismatch(format!(
                "operands of shape (n={n}, d={bd}) and (n={}, d={})",
                t.n(),
                t.d()
            )));
        }
    }
    if n * bd > DENSE_CAP {
        return Err(Error::SizeLimit(format!("dense path needs nd <= {DENSE_CAP}, got {}", n * bd)));
    }
    let ab = dense_mul(&dense_toeplitz(a), &dense_toeplitz(b))?;
    let cd = dense_mul(&dense_toeplitz(c), &dense_toeplitz(d))?;
    let diff = dense_sub(&ab, &cd);
    let scale = Tolerance::scale([max_abs(&ab), max_abs(&cd)]);
    let residual = match mode {
        CheckMode::Toeplitz => diagonal_scan_residual(&diff, n, bd),
        CheckMode::Equal => max_abs(&diff),
    };
    Ok(DenseVerdict {
        holds: tol.accepts(residual, scale),
        residual,
        scale,
    })
}

pub fn dense_product_check(
    a: &BlockToeplitz,
    b: &BlockToeplitz,
    c: &BlockToeplitz,
    d: &BlockToeplitz,
    mode: CheckMode,
    tol: Tolerance,
) -> Result<bool> {
    Ok(dense_product_verdict(a, b, c, d, mode, tol)?.holds)
}

/// Permutation matrix sending index `i*d + k` to `k*n + i`.
pub fn perfect_shuffle_matrix(n: usize, d: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n * d, n * d, |r, c| {
        let (i, k) = (c / d, c % d);
        if r == k * n + i {
            ONE
        } else {
            ZERO
        }
    })
}

/// `P A P^T` with an explicit perfect-shuffle `P`.
pub fn dense_shuffle_conjugate(t: &DiagonalBlockToeplitz) -> DenseMatrix {
    let (n, d) = (t.n(), t.d());
    let a = DenseMatrix::from_fn(n * d, n * d, |r, c| {
        let (bi, bj) = (r / d, c / d);
        if r % d == c % d {
            t.symbol(bj as isize - bi as isize)[r % d]
        } else {
            ZERO
        }
    });
    let p = perfect_shuffle_matrix(n, d);
    let pt = DenseMatrix::from_fn(n * d, n * d, |r, c| p.get(c, r));
    dense_mul(&dense_mul(&p, &a).expect("square"), &pt).expect("square")
}

/// Largest entry of `M M* - M* M`.
pub fn commutator_residual(m: &DenseMatrix) -> Result<f64> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let h = dense_adjoint(m);
    let lhs = dense_mul(m, &h)?;
    let rhs = dense_mul(&h, m)?;
    Ok(max_abs(&dense_sub(&lhs, &rhs)))
}

/// True iff `max |MM* - M*M| <= tol * scale(M)^2`.
pub fn normal_oracle(m: &DenseMatrix, tol: Tolerance) -> Result<bool> {
    let residual = commutator_residual(m)?;
    let scale = Tolerance::scale([max_abs(m)]);
    Ok(tol.accepts(residual, scale * scale))
}

/// Dense `n x n` matrix of a scalar Toeplitz slice.
pub fn dense_scalar_toeplitz(symbols: &[C64]) -> DenseMatrix {
    let n = symbols.len().div_ceil(2);
    DenseMatrix::from_fn(n, n, |r, c| symbols[(c + n - 1) - r])
}
