//! Normality of block Toeplitz matrices whose symbols are diagonal.
//!
//! Regrouping indices `(block i, slot k) -> (slot k, block i)` (the perfect
//! shuffle) turns such a matrix into a direct sum of `d` scalar `n x n`
//! Toeplitz slices, one per diagonal slot. The matrix is normal iff every
//! slice is, and a scalar Toeplitz matrix with symbols `a_k` is normal iff
//! for some unimodular `λ` one of
//!
//! * `a_{-j} = λ a_{n-j}` for `j = 1..n-1` (λ-circulant), or
//! * `a_{-j} = λ conj(a_j)` for `j = 1..n-1` (rotated Hermitian plus `a_0 I`)
//!
//! holds. The second identity has no index reversal: the reversed variant
//! `a_{-j} = λ conj(a_{n-j})` is not a normality criterion, and
//! `tests/normality.rs` carries a counterexample checked against the
//! commutator.
//!
//! The main diagonal symbol never matters.

use crate::error::{mismatch, Error, Result};
use crate::linalg::{Block, BlockToeplitz, Tolerance, C64, ONE, ZERO};

pub use crate::oracle::normal_oracle;

/// Scalar `n x n` Toeplitz matrix, symbols `a_{-(n-1)} .. a_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarToeplitz {
    n: usize,
    symbols: Vec<C64>,
}

impl ScalarToeplitz {
    pub fn new(n: usize, symbols: Vec<C64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySize("n"));
        }
        if symbols.len() != 2 * n - 1 {
            return Err(mismatch(format!(
                "order {n} needs {} symbols, got {}",
                2 * n - 1,
                symbols.len()
            )));
        }
        if symbols.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("scalar Toeplitz symbol".into()));
        }
        Ok(Self { n, symbols })
    }

    pub fn from_fn(n: usize, f: impl FnMut(isize) -> C64) -> Self {
        let m = n as isize - 1;
        Self::new(n, (-m..=m).map(f).collect()).expect("generated symbols")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbol(&self, k: isize) -> C64 {
        self.symbols[(k + self.n as isize - 1) as usize]
    }

    pub fn symbols(&self) -> &[C64] {
        &self.symbols
    }

    /// `a = (0, a_{-1}, ..., a_{1-n})`
    pub fn lower_wing(&self) -> Vec<C64> {
        (0..self.n)
            .map(|j| if j == 0 { ZERO } else { self.symbol(-(j as isize)) })
            .collect()
    }

    /// `b = (0, a_1, ..., a_{n-1})`
    pub fn upper_wing(&self) -> Vec<C64> {
        (0..self.n)
            .map(|j| if j == 0 { ZERO } else { self.symbol(j as isize) })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.symbols.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// Keeps slot 0 and reverses the remaining entries.
pub fn hat(v: &[C64]) -> Vec<C64> {
    let mut out = v.to_vec();
    if out.len() > 1 {
        out[1..].reverse();
    }
    out
}

/// Block Toeplitz matrix over the diagonal algebra: each symbol is the
/// diagonal of a `d x d` diagonal block.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalBlockToeplitz {
    n: usize,
    d: usize,
    symbols: Vec<Vec<C64>>,
}

impl DiagonalBlockToeplitz {
    pub fn new(n: usize, d: usize, symbols: Vec<Vec<C64>>) -> Result<Self> {
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
        if let Some(p) = symbols.iter().position(|s| s.len() != d) {
            return Err(mismatch(format!(
                "symbol {} has {} diagonal entries, expected {d}",
                p as isize - (n as isize - 1),
                symbols[p].len()
            )));
        }
        if symbols.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("diagonal symbol".into()));
        }
        Ok(Self { n, d, symbols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn symbol(&self, k: isize) -> &[C64] {
        &self.symbols[(k + self.n as isize - 1) as usize]
    }

    pub fn symbols(&self) -> &[Vec<C64>] {
        &self.symbols
    }

    pub fn to_block_toeplitz(&self) -> BlockToeplitz {
        BlockToeplitz::from_fn(self.n, self.d, |k| {
            Block::from_diagonal(self.symbol(k)).expect("finite diagonal")
        })
    }

    /// Accepts only symbols whose off-diagonal entries are exactly zero.
    pub fn from_block_toeplitz(t: &BlockToeplitz) -> Result<Self> {
        let m = t.n() as isize - 1;
        if let Some(k) = (-m..=m).find(|&k| !t.symbol(k).is_diagonal()) {
            return Err(Error::NotDiagonal(format!("symbol {k} has off-diagonal entries")));
        }
        Self::new(t.n(), t.d(), t.symbols().iter().map(Block::diagonal).collect())
    }
}

/// The `d` scalar slices; slice `k` has symbols `a_{m,k} = (T_m)_{kk}`.
pub fn shuffle(t: &DiagonalBlockToeplitz) -> Vec<ScalarToeplitz> {
    (0..t.d)
        .map(|k| ScalarToeplitz {
            n: t.n,
            symbols: t.symbols.iter().map(|s| s[k]).collect(),
        })
        .collect()
}

pub fn unshuffle(slices: &[ScalarToeplitz]) -> Result<DiagonalBlockToeplitz> {
    let first = slices.first().ok_or(Error::EmptySize("slice count"))?;
    let n = first.n;
    if let Some(k) = slices.iter().position(|s| s.n != n) {
        return Err(mismatch(format!(
            "slice {k} has order {}, slice 0 has order {n}",
            slices[k].n
        )));
    }
    let symbols = (0..2 * n - 1)
        .map(|m| slices.iter().map(|s| s.symbols[m]).collect())
        .collect();
    DiagonalBlockToeplitz::new(n, slices.len(), symbols)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    CirculantType,
    ConjugateType,
    Both,
    NotNormal,
}

impl Classification {
    pub fn is_normal(self) -> bool {
        self != Classification::NotNormal
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::CirculantType => "circulant-type",
            Classification::ConjugateType => "conjugate-type",
            Classification::Both => "both",
            Classification::NotNormal => "not-normal",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A branch identity `target_j = λ reference_j` that held.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchFit {
    pub lambda: C64,
    pub residual: f64,
}

/// Fits `target_j = λ reference_j` for `j >= 1` with `|λ| = 1`.
///
/// `λ` comes from the first `j` whose reference entry exceeds the threshold.
/// With no such pivot the identity holds only if the target vanishes, and
/// `λ` defaults to 1.
fn fit_branch(target: &[C64], reference: &[C64], scale: f64, tol: Tolerance) -> Option<BranchFit> {
    let threshold = tol.eps() * scale;
    let lambda = match (1..target.len()).find(|&j| reference[j].norm() > threshold) {
        Some(p) => {
            let lambda = target[p] / reference[p];
            if (lambda.norm() - 1.0).abs() > tol.eps() {
                return None;
            }
            lambda
        }
        None => ONE,
    };
    let residual = (1..target.len()).fold(0.0f64, |m, j| m.max((target[j] - lambda * reference[j]).norm()));
    tol.accepts(residual, scale).then_some(BranchFit { lambda, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceVerdict {
    pub slice: usize,
    pub classification: Classification,
    /// λ of the reported branch (the circulant one when both hold).
    pub lambda: Option<C64>,
    pub circulant: Option<BranchFit>,
    pub conjugate: Option<BranchFit>,
}

/// Scalar normal Toeplitz test for one slice.
pub fn scalar_normal_classify(t: &ScalarToeplitz, tol: Tolerance) -> SliceVerdict {
    classify_slice(0, t, tol)
}

fn classify_slice(slice: usize, t: &ScalarToeplitz, tol: Tolerance) -> SliceVerdict {
    let scale = Tolerance::scale([t.max_abs()]);
    let a = t.lower_wing();
    let b = t.upper_wing();
    let circulant = fit_branch(&a, &hat(&b), scale, tol);
    let b_conj: Vec<C64> = b.iter().map(|z| z.conj()).collect();
    let conjugate = fit_branch(&a, &b_conj, scale, tol);
    let (classification, lambda) = match (circulant, conjugate) {
        (Some(c), Some(_)) => (Classification::Both, Some(c.lambda)),
        (Some(c), None) => (Classification::CirculantType, Some(c.lambda)),
        (None, Some(h)) => (Classification::ConjugateType, Some(h.lambda)),
        (None, None) => (Classification::NotNormal, None),
    };
    SliceVerdict {
        slice,
        classification,
        lambda,
        circulant,
        conjugate,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalityVerdict {
    pub slices: Vec<SliceVerdict>,
    pub overall: bool,
}

impl NormalityVerdict {
    pub fn lambdas(&self) -> Vec<Option<C64>> {
        self.slices.iter().map(|s| s.lambda).collect()
    }
}

/// Classifies every shuffle slice; normal iff all slices are (each with its
/// own branch and λ).
pub fn block_normal_classify(t: &DiagonalBlockToeplitz, tol: Tolerance) -> NormalityVerdict {
    let slices: Vec<SliceVerdict> = shuffle(t)
        .iter()
        .enumerate()
        .map(|(k, s)| classify_slice(k, s, tol))
        .collect();
    let overall = slices.iter().all(|s| s.classification.is_normal());
    NormalityVerdict { slices, overall }
}
