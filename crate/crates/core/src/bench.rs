//! Timing of the structured `AB - CD` test against the dense route
//! (two `nd x nd` products plus a diagonal scan) on identical gap-matched
//! inputs.

use std::hint::black_box;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::io::Generator;
use crate::linalg::Tolerance;
use crate::oracle::{dense_product_check, CheckMode, DENSE_CAP};
use crate::product::difference_is_toeplitz;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub n: usize,
    pub d: usize,
    pub reps: usize,
    pub seed: u64,
    pub structured_median_ns: u128,
    pub dense_median_ns: u128,
    /// `dense / structured`; infinite if the structured arm rounds to 0 ns.
    pub speedup: f64,
    pub verdicts_agree: bool,
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2
    }
}

pub fn bench(n: usize, d: usize, reps: usize, seed: u64) -> Result<BenchReport> {
    if reps == 0 {
        return Err(Error::EmptySize("reps"));
    }
    if n == 0 {
        return Err(Error::EmptySize("n"));
    }
    if d == 0 {
        return Err(Error::EmptySize("d"));
    }
    if n * d > DENSE_CAP {
        return Err(Error::SizeLimit(format!(
            "dense arm needs nd <= {DENSE_CAP}, got {}",
            n * d
        )));
    }
    let [a, b, c, dd] = Generator::new(seed).gap_matched_quadruple(n, d);
    let tol = Tolerance::default();
    let mut structured = Vec::with_capacity(reps);
    let mut dense = Vec::with_capacity(reps);
    let mut agree = true;
    for _ in 0..reps {
        let t0 = Instant::now();
        let s = black_box(difference_is_toeplitz(&a, &b, &c, &dd, tol)?);
        structured.push(t0.elapsed().as_nanos());

        let t0 = Instant::now();
        let o = black_box(dense_product_check(&a, &b, &c, &dd, CheckMode::Toeplitz, tol)?);
        dense.push(t0.elapsed().as_nanos());
        agree &= s == o;
    }
    let (s, o) = (median(structured), median(dense));
    let speedup = if s == 0 { f64::INFINITY } else { o as f64 / s as f64 };
    Ok(BenchReport {
        n,
        d,
        reps,
        seed,
        structured_median_ns: s,
        dense_median_ns: o,
        speedup,
        verdicts_agree: agree,
    })
}
