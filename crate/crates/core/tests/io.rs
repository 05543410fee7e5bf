mod common;

use blocktoep::displacement::is_block_toeplitz;
use blocktoep::io::{generate, generate_with, parse, serialize, Branch, GenKind, GenOptions, MatrixFile};
use blocktoep::normality::{block_normal_classify, DiagonalBlockToeplitz};
use blocktoep::oracle::{dense_product_check, diagonal_scan_is_toeplitz, normal_oracle, CheckMode};
use blocktoep::product::{difference_is_toeplitz, product_is_toeplitz};
use blocktoep::{flatten, BlockToeplitz, Tolerance};
use common::c;
use proptest::prelude::*;

fn toeplitz(f: &MatrixFile) -> BlockToeplitz {
    match f {
        MatrixFile::BlockToeplitz(t) => t.clone(),
        other => panic!("expected block-toeplitz, got {:?}", other.kind()),
    }
}

fn diagonal(f: &MatrixFile) -> DiagonalBlockToeplitz {
    match f {
        MatrixFile::DiagonalBlockToeplitz(t) => t.clone(),
        other => panic!("expected diagonal-block-toeplitz, got {:?}", other.kind()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_text_round_trips(kind_ix in 0usize..7, n in 2usize..=6, d in 1usize..=3, seed in any::<u64>()) {
        let kind = GenKind::ALL[kind_ix];
        for f in generate(kind, n, d, seed).unwrap() {
            let text = serialize(&f);
            let back = parse(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(serialize(&back), text);
        }
    }
}

#[test]
fn generated_toeplitz_kinds_are_toeplitz() {
    let tol = Tolerance::default();
    for kind in [GenKind::RandomToeplitz, GenKind::LowerTriangular, GenKind::Circulant] {
        for seed in 0..20 {
            let g = generate(kind, 5, 2, seed).unwrap()[0].to_grid();
            assert!(is_block_toeplitz(&g, tol));
            assert!(diagonal_scan_is_toeplitz(&g, tol));
        }
    }
    let g = generate(GenKind::RandomGrid, 5, 2, 1).unwrap()[0].to_grid();
    assert!(!diagonal_scan_is_toeplitz(&g, tol));
}

#[test]
fn circulant_families_multiply_to_toeplitz() {
    let tol = Tolerance::default();
    for seed in 0..20u64 {
        let a = toeplitz(&generate(GenKind::Circulant, 6, 2, seed).unwrap()[0]);
        let b = toeplitz(&generate(GenKind::Circulant, 6, 2, seed + 1000).unwrap()[0]);
        assert!(product_is_toeplitz(&a, &b, tol).unwrap());
        let z = BlockToeplitz::zeros(6, 2);
        assert!(dense_product_check(&a, &b, &z, &z, CheckMode::Toeplitz, tol).unwrap());
    }
}

#[test]
fn gap_matched_files_pass() {
    let tol = Tolerance::default();
    for seed in 0..20 {
        let q: Vec<BlockToeplitz> = generate(GenKind::GapMatchedQuadruple, 5, 3, seed).unwrap().iter().map(toeplitz).collect();
        assert!(difference_is_toeplitz(&q[0], &q[1], &q[2], &q[3], tol).unwrap());
        assert!(dense_product_check(&q[0], &q[1], &q[2], &q[3], CheckMode::Toeplitz, tol).unwrap());
    }
}

#[test]
fn normal_slices_with_lambda_i() {
    let tol = Tolerance::default();
    let opts = GenOptions { branch: Branch::Mixed, lambda: Some(c(0.0, 1.0)) };
    for seed in 0..20 {
        let t = diagonal(&generate_with(GenKind::NormalSlices, 5, 3, seed, &opts).unwrap()[0]);
        assert!(block_normal_classify(&t, tol).overall);
        assert!(normal_oracle(&flatten(&t.to_block_toeplitz().expand()), tol).unwrap());
    }
}

#[test]
fn non_normal_files_are_not_normal() {
    let tol = Tolerance::default();
    for seed in 0..20 {
        let t = diagonal(&generate(GenKind::NonNormal, 4, 2, seed).unwrap()[0]);
        assert!(!block_normal_classify(&t, tol).overall);
        assert!(!normal_oracle(&flatten(&t.to_block_toeplitz().expand()), tol).unwrap());
    }
}
