mod common;

use blocktoep::io::Generator;
use blocktoep::oracle::{dense_adjoint, dense_mul, diagonal_scan_is_toeplitz};
use blocktoep::{adjoint, expand, flatten, grid_mul, unflatten, BlockGrid, BlockToeplitz, Tolerance};
use proptest::prelude::*;

fn grid_strategy() -> impl Strategy<Value = BlockGrid> {
    (1usize..=8, 1usize..=4, any::<u64>()).prop_map(|(n, d, seed)| Generator::new(seed).random_grid(n, d))
}

fn toeplitz_strategy() -> impl Strategy<Value = BlockToeplitz> {
    (1usize..=8, 1usize..=4, any::<u64>()).prop_map(|(n, d, seed)| Generator::new(seed).random_toeplitz(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flatten_unflatten_bit_exact(g in grid_strategy()) {
        let m = flatten(&g);
        prop_assert_eq!(unflatten(&m, g.n(), g.d()).unwrap(), g.clone());
        prop_assert_eq!(flatten(&unflatten(&m, g.n(), g.d()).unwrap()), m);
    }

    #[test]
    fn grid_mul_matches_dense_product(seed in any::<u64>(), n in 1usize..=8, d in 1usize..=4) {
        let mut gen = Generator::new(seed);
        let (a, b) = (gen.random_grid(n, d), gen.random_grid(n, d));
        let structured = flatten(&grid_mul(&a, &b).unwrap());
        let dense = dense_mul(&flatten(&a), &flatten(&b)).unwrap();
        let rel = structured.max_abs_diff(&dense) / Tolerance::scale([dense.max_abs()]);
        prop_assert!(rel <= 1e-12, "relative error {rel}");
    }

    #[test]
    fn adjoint_is_involutive_anti_homomorphism(seed in any::<u64>(), n in 1usize..=6, d in 1usize..=3) {
        let mut gen = Generator::new(seed);
        let (a, b) = (gen.random_grid(n, d), gen.random_grid(n, d));
        prop_assert_eq!(adjoint(&adjoint(&a)), a.clone());
        let lhs = adjoint(&grid_mul(&a, &b).unwrap());
        let rhs = grid_mul(&adjoint(&b), &adjoint(&a)).unwrap();
        let scale = Tolerance::scale([lhs.max_abs()]);
        prop_assert!(Tolerance::default().accepts(lhs.max_abs_diff(&rhs), scale));
    }

    #[test]
    fn expand_is_toeplitz_under_diagonal_scan(t in toeplitz_strategy()) {
        prop_assert!(diagonal_scan_is_toeplitz(&expand(&t), Tolerance::new(0.0).unwrap()));
    }
}

#[test]
fn adjoint_matches_dense_conjugate_transpose() {
    let g = Generator::new(3).random_grid(4, 2);
    assert_eq!(flatten(&adjoint(&g)), dense_adjoint(&flatten(&g)));
}

#[test]
fn grid_mul_random_four_by_two() {
    let mut gen = Generator::new(11);
    let (a, b) = (gen.random_grid(4, 2), gen.random_grid(4, 2));
    let p = grid_mul(&a, &b).unwrap();
    let dense = unflatten(&dense_mul(&flatten(&a), &flatten(&b)).unwrap(), 4, 2).unwrap();
    assert!(p.max_abs_diff(&dense) <= 1e-12 * Tolerance::scale([dense.max_abs()]));
}
