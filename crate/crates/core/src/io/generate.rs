//! Seeded generators for structured test instances.
//!
//! All generators draw from a ChaCha8 stream, so output depends only on the
//! arguments. Magnitudes are kept away from zero where a construction relies
//! on a nonzero entry.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::format::MatrixFile;
use crate::linalg::{Block, BlockGrid, BlockToeplitz, C64};
use crate::normality::DiagonalBlockToeplitz;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    RandomToeplitz,
    LowerTriangular,
    Circulant,
    GapMatchedQuadruple,
    NormalSlices,
    NonNormal,
    RandomGrid,
}

impl GenKind {
    pub const ALL: [GenKind; 7] = [
        GenKind::RandomToeplitz,
        GenKind::LowerTriangular,
        GenKind::Circulant,
        GenKind::GapMatchedQuadruple,
        GenKind::NormalSlices,
        GenKind::NonNormal,
        GenKind::RandomGrid,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::RandomToeplitz => "random-toeplitz",
            GenKind::LowerTriangular => "lower-triangular",
            GenKind::Circulant => "circulant",
            GenKind::GapMatchedQuadruple => "gap-matched-quadruple",
            GenKind::NormalSlices => "normal-slices",
            GenKind::NonNormal => "non-normal",
            GenKind::RandomGrid => "random-grid",
        }
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// Which normality identity each slice of a `normal-slices` instance obeys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    Circulant,
    Conjugate,
    /// Even slots circulant, odd slots conjugate.
    #[default]
    Mixed,
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circulant" => Ok(Branch::Circulant),
            "conjugate" => Ok(Branch::Conjugate),
            "mixed" => Ok(Branch::Mixed),
            other => Err(Error::UnknownKind(format!("branch {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GenOptions {
    pub branch: Branch,
    /// Common λ for every slice; random unimodular per slice when absent.
    pub lambda: Option<C64>,
}

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn index(&mut self, upper: usize) -> usize {
        self.rng.gen_range(0..upper)
    }

    /// Real and imaginary parts uniform on [-1, 1).
    pub fn complex(&mut self) -> C64 {
        C64::new(self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0))
    }

    /// Modulus in [0.5, 1.5), uniform phase.
    pub fn nonzero_complex(&mut self) -> C64 {
        let r = self.uniform(0.5, 1.5);
        C64::from_polar(r, self.uniform(0.0, std::f64::consts::TAU))
    }

    pub fn unimodular(&mut self) -> C64 {
        C64::from_polar(1.0, self.uniform(0.0, std::f64::consts::TAU))
    }

    pub fn block(&mut self, d: usize) -> Block {
        Block::from_fn(d, |_, _| self.complex())
    }

    pub fn random_grid(&mut self, n: usize, d: usize) -> BlockGrid {
        BlockGrid::from_fn(n, d, |_, _| self.block(d))
    }

    pub fn random_toeplitz(&mut self, n: usize, d: usize) -> BlockToeplitz {
        BlockToeplitz::from_fn(n, d, |_| self.block(d))
    }

    /// All positive symbols zero.
    pub fn lower_triangular(&mut self, n: usize, d: usize) -> BlockToeplitz {
        BlockToeplitz::from_fn(n, d, |k| if k > 0 { Block::zeros(d) } else { self.block(d) })
    }

    /// `T_{-k} = T_{n-k}` for `k = 1..n-1`.
    pub fn circulant(&mut self, n: usize, d: usize) -> BlockToeplitz {
        let base: Vec<Block> = (0..n).map(|_| self.block(d)).collect();
        BlockToeplitz::from_fn(n, d, |k| {
            if k >= 0 {
                base[k as usize].clone()
            } else {
                base[(n as isize + k) as usize].clone()
            }
        })
    }

    /// `(a, b, c, d)` where `c`, `d` share every off-diagonal symbol with `a`,
    /// `b` but carry fresh main diagonals.
    pub fn gap_matched_quadruple(&mut self, n: usize, d: usize) -> [BlockToeplitz; 4] {
        let a = self.random_toeplitz(n, d);
        let b = self.random_toeplitz(n, d);
        let c = a.with_main_diagonal(self.block(d)).expect("same dimension");
        let dd = b.with_main_diagonal(self.block(d)).expect("same dimension");
        [a, b, c, dd]
    }

    /// Normal block Toeplitz over the diagonal algebra, slice by slice.
    pub fn normal_slices(&mut self, n: usize, d: usize, opts: &GenOptions) -> DiagonalBlockToeplitz {
        let m = n as isize - 1;
        let mut symbols = vec![vec![C64::new(0.0, 0.0); d]; 2 * n - 1];
        for k in 0..d {
            let conjugate = match opts.branch {
                Branch::Circulant => false,
                Branch::Conjugate => true,
                Branch::Mixed => k % 2 == 1,
            };
            let lambda = opts.lambda.unwrap_or_else(|| self.unimodular());
            let upper: Vec<C64> = (0..n).map(|_| self.nonzero_complex()).collect();
            symbols[m as usize][k] = self.complex();
            for j in 1..n {
                symbols[m as usize + j][k] = upper[j];
                symbols[m as usize - j][k] = if conjugate {
                    lambda * upper[j].conj()
                } else {
                    lambda * upper[n - j]
                };
            }
        }
        DiagonalBlockToeplitz::new(n, d, symbols).expect("consistent symbols")
    }

    /// A normal instance with `a_{-1}` of one slot scaled by `1 + δ`,
    /// `δ ∈ [0.25, 1)`. The (0, 0) entry of `AA* - A*A` for that slot moves
    /// off zero, so the result is never normal. Needs `n >= 2`.
    pub fn non_normal(&mut self, n: usize, d: usize) -> Result<DiagonalBlockToeplitz> {
        if n < 2 {
            return Err(Error::DimensionMismatch(
                "non-normal instances need n >= 2".into(),
            ));
        }
        let base = self.normal_slices(n, d, &GenOptions::default());
        let slot = self.index(d);
        let factor = 1.0 + self.uniform(0.25, 1.0);
        let mut symbols = base.symbols().to_vec();
        symbols[n - 2][slot] *= factor;
        DiagonalBlockToeplitz::new(n, d, symbols)
    }
}

/// Instances of `kind`; `gap-matched-quadruple` yields four files, every
/// other kind one.
pub fn generate(kind: GenKind, n: usize, d: usize, seed: u64) -> Result<Vec<MatrixFile>> {
    generate_with(kind, n, d, seed, &GenOptions::default())
}

pub fn generate_with(kind: GenKind, n: usize, d: usize, seed: u64, opts: &GenOptions) -> Result<Vec<MatrixFile>> {
    if n == 0 {
        return Err(Error::EmptySize("n"));
    }
    if d == 0 {
        return Err(Error::EmptySize("d"));
    }
    let mut g = Generator::new(seed);
    let files = match kind {
        GenKind::RandomToeplitz => vec![MatrixFile::BlockToeplitz(g.random_toeplitz(n, d))],
        GenKind::LowerTriangular => vec![MatrixFile::BlockToeplitz(g.lower_triangular(n, d))],
        GenKind::Circulant => vec![MatrixFile::BlockToeplitz(g.circulant(n, d))],
        GenKind::GapMatchedQuadruple => g
            .gap_matched_quadruple(n, d)
            .into_iter()
            .map(MatrixFile::BlockToeplitz)
            .collect(),
        GenKind::NormalSlices => vec![MatrixFile::DiagonalBlockToeplitz(g.normal_slices(n, d, opts))],
        GenKind::NonNormal => vec![MatrixFile::DiagonalBlockToeplitz(g.non_normal(n, d)?)],
        GenKind::RandomGrid => vec![MatrixFile::Dense(g.random_grid(n, d))],
    };
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::format::serialize;

    #[test]
    fn kinds_parse_and_unknown_rejected() {
        for k in GenKind::ALL {
            assert_eq!(k.as_str().parse::<GenKind>().unwrap(), k);
        }
        assert!(matches!("banded".parse::<GenKind>(), Err(Error::UnknownKind(_))));
    }

    #[test]
    fn deterministic_for_fixed_arguments() {
        for k in GenKind::ALL {
            let a: Vec<String> = generate(k, 4, 2, 99).unwrap().iter().map(serialize).collect();
            let b: Vec<String> = generate(k, 4, 2, 99).unwrap().iter().map(serialize).collect();
            assert_eq!(a, b, "{}", k.as_str());
            let c: Vec<String> = generate(k, 4, 2, 100).unwrap().iter().map(serialize).collect();
            assert_ne!(a, c, "{}", k.as_str());
        }
    }

    #[test]
    fn quadruple_yields_four_files() {
        assert_eq!(generate(GenKind::GapMatchedQuadruple, 3, 1, 0).unwrap().len(), 4);
    }

    #[test]
    fn circulant_structure() {
        let t = Generator::new(5).circulant(5, 2);
        for k in 1..5isize {
            assert_eq!(t.symbol(-k), t.symbol(5 - k));
        }
    }

    #[test]
    fn non_normal_needs_two_blocks() {
        assert!(generate(GenKind::NonNormal, 1, 2, 0).is_err());
        assert!(generate(GenKind::RandomGrid, 0, 2, 0).is_err());
    }
}
