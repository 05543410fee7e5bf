mod common;

use blocktoep::displacement::{displacement, is_block_toeplitz, reconstruct, shift_down, toeplitz_factor};
use blocktoep::io::Generator;
use blocktoep::oracle::{dense_adjoint, dense_displacement, dense_mul, dense_shift_matrix, diagonal_scan_is_toeplitz};
use blocktoep::{flatten, BlockGrid, Tolerance};
use common::{bump, c, shape};
use proptest::prelude::*;

#[test]
fn shift_down_matches_dense_conjugation() {
    let g = Generator::new(21).random_grid(4, 2);
    let s = dense_shift_matrix(4, 2);
    let dense = dense_mul(&dense_mul(&s, &flatten(&g)).unwrap(), &dense_adjoint(&s)).unwrap();
    assert_eq!(flatten(&shift_down(&g)), dense);
}

#[test]
fn displacement_matches_dense_shift_oracle() {
    let mut gen = Generator::new(22);
    for _ in 0..50 {
        let (n, d) = shape(&mut gen, 8, 4);
        let g = gen.random_grid(n, d);
        let dense = dense_displacement(&flatten(&g), n, d).unwrap();
        let rel = flatten(&displacement(&g)).max_abs_diff(&dense) / Tolerance::scale([g.max_abs()]);
        assert!(rel <= 1e-13, "n={n} d={d} rel={rel}");
    }
}

#[test]
fn reconstruction_loop() {
    let mut gen = Generator::new(23);
    for _ in 0..50 {
        let (n, d) = shape(&mut gen, 6, 3);
        let g = gen.random_grid(n, d);
        let back = reconstruct(&displacement(&g));
        assert!(back.max_abs_diff(&g) <= 1e-13 * Tolerance::scale([g.max_abs()]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reconstruct_inverts_displacement(seed in any::<u64>(), n in 1usize..=8, d in 1usize..=4) {
        let g = Generator::new(seed).random_grid(n, d);
        let back = reconstruct(&displacement(&g));
        prop_assert!(back.max_abs_diff(&g) <= 1e-13 * Tolerance::scale([g.max_abs()]));
    }

    #[test]
    fn factors_reproduce_displacement(seed in any::<u64>(), n in 1usize..=8, d in 1usize..=4) {
        let t = Generator::new(seed).random_toeplitz(n, d);
        let g = t.expand();
        let f = toeplitz_factor(&g, Tolerance::default()).expect("expanded Toeplitz must factor");
        prop_assert!(f.xprime.get(0).is_zero());
        prop_assert_eq!(f.materialize(), displacement(&g));
        prop_assert_eq!(reconstruct(&f.materialize()), g);
        prop_assert_eq!(f.to_toeplitz(), t);
    }

    #[test]
    fn zero_displacement_iff_zero(seed in any::<u64>(), n in 1usize..=6, d in 1usize..=3, zero in any::<bool>()) {
        let g = if zero { BlockGrid::zeros(n, d) } else { Generator::new(seed).random_grid(n, d) };
        let tol = Tolerance::default();
        let dg = displacement(&g);
        prop_assert_eq!(tol.accepts(dg.max_abs(), 1.0), tol.accepts(g.max_abs(), 1.0));
    }
}

/// 1000 grids: expanded Toeplitz, single-block perturbations at sizes well
/// above and well below the threshold, and unstructured grids.
#[test]
fn structure_test_agrees_with_diagonal_scan() {
    let seed = 0x7031_0001;
    eprintln!("sweep seed {seed:#x}");
    let mut gen = Generator::new(seed);
    let tol = Tolerance::default();
    let mut disagreements = 0;
    let (mut yes, mut no) = (0, 0);
    for case in 0..1000 {
        let (n, d) = shape(&mut gen, 8, 4);
        let g = match case % 4 {
            0 => gen.random_toeplitz(n, d).expand(),
            1 | 2 => {
                let base = gen.random_toeplitz(n, d).expand();
                let (i, j) = (gen.index(n), gen.index(n));
                let size = if case % 4 == 1 { 1e-3 } else { 1e-12 };
                bump(&base, i, j, c(size, -size))
            }
            _ => gen.random_grid(n, d),
        };
        let fast = is_block_toeplitz(&g, tol);
        if fast != diagonal_scan_is_toeplitz(&g, tol) {
            disagreements += 1;
        }
        if fast {
            yes += 1
        } else {
            no += 1
        }
    }
    assert_eq!(disagreements, 0);
    assert!(yes > 300 && no > 300, "yes={yes} no={no}");
}
