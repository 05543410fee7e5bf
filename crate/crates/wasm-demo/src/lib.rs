//! Browser bindings for three interactive views: displacement of a block
//! Toeplitz matrix, the wing gap of a product pair, and slice-wise normality.
//!
//! Each entry point returns a JSON string so the page needs no generated
//! TypeScript types. The plain `*_json` functions are what the native tests
//! exercise.

use blocktoep::displacement::{displacement, interior_residual, is_block_toeplitz};
use blocktoep::io::{Branch, GenOptions, Generator};
use blocktoep::normality::{block_normal_classify, shuffle};
use blocktoep::oracle::{
    commutator_residual, dense_product_verdict, dense_scalar_toeplitz, diagonal_scan_is_toeplitz, normal_oracle,
    CheckMode,
};
use blocktoep::product::{difference_gap_check, wing_gap};
use blocktoep::{flatten, Block, BlockGrid, BlockToeplitz, DenseMatrix, Tolerance};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest `nd` the page will render.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Serialize)]
pub struct Heatmap {
    pub size: usize,
    /// Entry magnitudes, row-major.
    pub values: Vec<f64>,
    pub max: f64,
}

impl Heatmap {
    fn of(m: &DenseMatrix) -> Self {
        let values: Vec<f64> = m.as_slice().iter().map(|z| z.norm()).collect();
        let max = values.iter().copied().fold(0.0, f64::max);
        Heatmap { size: m.rows(), values, max }
    }

    fn of_grid(g: &BlockGrid) -> Self {
        Self::of(&flatten(g))
    }
}

fn check_shape(n: usize, d: usize) -> Result<(), String> {
    if n == 0 || d == 0 {
        return Err("n and d must be at least 1".into());
    }
    if n * d > MAX_DIM {
        return Err(format!("n*d must be at most {MAX_DIM}"));
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
pub struct DisplacementView {
    pub matrix: Heatmap,
    pub displacement: Heatmap,
    pub toeplitz: bool,
    pub oracle: bool,
    pub interior_residual: f64,
}

/// Random block Toeplitz matrix, optionally with one interior entry of one
/// block moved by `perturb`.
pub fn displacement_view(n: usize, d: usize, seed: u64, perturb: f64) -> Result<DisplacementView, String> {
    check_shape(n, d)?;
    if !perturb.is_finite() {
        return Err("perturbation must be finite".into());
    }
    let mut gen = Generator::new(seed);
    let mut g = gen.random_toeplitz(n, d).expand();
    if perturb != 0.0 {
        let (i, j) = (gen.index(n), gen.index(n));
        let b = g.block(i, j).add(&Block::from_fn(d, |r, c| {
            if r == 0 && c == 0 {
                blocktoep::C64::new(perturb, 0.0)
            } else {
                blocktoep::C64::new(0.0, 0.0)
            }
        }));
        g.set_block(i, j, b).map_err(|e| e.to_string())?;
    }
    let tol = Tolerance::default();
    Ok(DisplacementView {
        matrix: Heatmap::of_grid(&g),
        displacement: Heatmap::of_grid(&displacement(&g)),
        toeplitz: is_block_toeplitz(&g, tol),
        oracle: diagonal_scan_is_toeplitz(&g, tol),
        interior_residual: interior_residual(&g),
    })
}

#[derive(Debug, Serialize)]
pub struct ProductView {
    pub family: String,
    pub gap_ab: Heatmap,
    pub gap_cd: Heatmap,
    pub verdict: bool,
    pub residual: f64,
    pub scale: f64,
    pub oracle: bool,
    pub oracle_residual: f64,
}

/// Quadruple from `family` (`gap-matched`, `circulant`, `triangular` or
/// `random`) and the test of whether `AB - CD` is block Toeplitz.
pub fn product_view(n: usize, d: usize, seed: u64, family: &str) -> Result<ProductView, String> {
    check_shape(n, d)?;
    let mut gen = Generator::new(seed);
    let q: [BlockToeplitz; 4] = match family {
        "gap-matched" => gen.gap_matched_quadruple(n, d),
        "circulant" => std::array::from_fn(|_| gen.circulant(n, d)),
        "triangular" => std::array::from_fn(|_| gen.lower_triangular(n, d)),
        "random" => std::array::from_fn(|_| gen.random_toeplitz(n, d)),
        other => return Err(format!("unknown family `{other}`")),
    };
    let tol = Tolerance::default();
    let err = |e: blocktoep::Error| e.to_string();
    let check = difference_gap_check(&q[0], &q[1], &q[2], &q[3], tol).map_err(err)?;
    let dense = dense_product_verdict(&q[0], &q[1], &q[2], &q[3], CheckMode::Toeplitz, tol).map_err(err)?;
    Ok(ProductView {
        family: family.to_string(),
        gap_ab: Heatmap::of_grid(&wing_gap(&q[0], &q[1]).map_err(err)?.materialize()),
        gap_cd: Heatmap::of_grid(&wing_gap(&q[2], &q[3]).map_err(err)?.materialize()),
        verdict: check.holds,
        residual: check.residual,
        scale: check.scale,
        oracle: dense.holds,
        oracle_residual: dense.residual,
    })
}

#[derive(Debug, Serialize)]
pub struct SliceView {
    pub slice: usize,
    pub classification: String,
    pub lambda: Option<[f64; 2]>,
    pub matrix: Heatmap,
}

#[derive(Debug, Serialize)]
pub struct NormalityView {
    pub matrix: Heatmap,
    pub slices: Vec<SliceView>,
    pub normal: bool,
    pub oracle: bool,
    pub commutator: f64,
}

/// Normal instance on `branch` (`circulant`, `conjugate` or `mixed`), or a
/// perturbed non-normal one.
pub fn normality_view(n: usize, d: usize, seed: u64, branch: &str, perturb: bool) -> Result<NormalityView, String> {
    check_shape(n, d)?;
    let branch: Branch = branch.parse().map_err(|e: blocktoep::Error| e.to_string())?;
    let mut gen = Generator::new(seed);
    let t = if perturb {
        gen.non_normal(n, d).map_err(|e| e.to_string())?
    } else {
        gen.normal_slices(n, d, &GenOptions { branch, lambda: None })
    };
    let tol = Tolerance::default();
    let dense = flatten(&t.to_block_toeplitz().expand());
    let verdict = block_normal_classify(&t, tol);
    let slices = verdict
        .slices
        .iter()
        .zip(shuffle(&t))
        .map(|(v, s)| SliceView {
            slice: v.slice,
            classification: v.classification.to_string(),
            lambda: v.lambda.map(|z| [z.re, z.im]),
            matrix: Heatmap::of(&dense_scalar_toeplitz(s.symbols())),
        })
        .collect();
    Ok(NormalityView {
        matrix: Heatmap::of(&dense),
        slices,
        normal: verdict.overall,
        oracle: normal_oracle(&dense, tol).map_err(|e| e.to_string())?,
        commutator: commutator_residual(&dense).map_err(|e| e.to_string())?,
    })
}

pub fn displacement_json(n: usize, d: usize, seed: u64, perturb: f64) -> Result<String, String> {
    to_json(&displacement_view(n, d, seed, perturb)?)
}

pub fn product_json(n: usize, d: usize, seed: u64, family: &str) -> Result<String, String> {
    to_json(&product_view(n, d, seed, family)?)
}

pub fn normality_json(n: usize, d: usize, seed: u64, branch: &str, perturb: bool) -> Result<String, String> {
    to_json(&normality_view(n, d, seed, branch, perturb)?)
}

// JS numbers carry seeds up to 2^53 exactly, so they arrive as f64.
fn seed_of(seed: f64) -> Result<u64, JsError> {
    if seed.is_finite() && seed >= 0.0 && seed.fract() == 0.0 && seed <= 9_007_199_254_740_991.0 {
        Ok(seed as u64)
    } else {
        Err(JsError::new("seed must be a non-negative integer"))
    }
}

#[wasm_bindgen(js_name = displacementDemo)]
pub fn displacement_demo(n: usize, d: usize, seed: f64, perturb: f64) -> Result<String, JsError> {
    displacement_json(n, d, seed_of(seed)?, perturb).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = productDemo)]
pub fn product_demo(n: usize, d: usize, seed: f64, family: &str) -> Result<String, JsError> {
    product_json(n, d, seed_of(seed)?, family).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = normalityDemo)]
pub fn normality_demo(n: usize, d: usize, seed: f64, branch: &str, perturb: bool) -> Result<String, JsError> {
    normality_json(n, d, seed_of(seed)?, branch, perturb).map_err(|e| JsError::new(&e))
}
