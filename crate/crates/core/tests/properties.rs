//! Property tests for the structural invariants of the kernel: these hold
//! for arbitrary inputs, not just the hand-picked cases in the unit tests.

use num_complex::Complex64;
use proptest::prelude::*;

use chent::entropy::{relative_entropy, von_neumann_entropy};
use chent::linalg::{
    canonical_purification, hermitian_eig, kron, partial_trace, vec_norm, ComplexMatrix,
};
use chent::rng::{random_density, rng_for};

const CUT: f64 = 1e-14;

fn density(dim: usize, seed: u64) -> ComplexMatrix {
    random_density(dim, &mut rng_for(seed, 17))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partial_trace_is_trace_preserving_and_positive(seed in 0u64..5000, da in 2usize..4, db in 2usize..4) {
        let rho = density(da * db, seed);
        let reduced = partial_trace(&rho, &[da, db], &[0]).unwrap();
        let trace_defect = (reduced.trace().re - rho.trace().re).abs();
        prop_assert!(trace_defect < 1e-12);
        let min = hermitian_eig(&reduced).unwrap().min_eigenvalue();
        prop_assert!(min >= -1e-10);
    }

    #[test]
    fn kron_mixed_product(seed in 0u64..5000) {
        let mut rng = rng_for(seed, 23);
        let mut draw = || ComplexMatrix::from_fn(2, 2, |_, _| {
            use rand::Rng;
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let (a, b, c, d) = (draw(), draw(), draw(), draw());
        let lhs = kron(&a, &b).matmul(&kron(&c, &d));
        let rhs = kron(&a.matmul(&c), &b.matmul(&d));
        prop_assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn purification_has_unit_norm_and_reconstructs(seed in 0u64..5000, dim in 2usize..5) {
        let rho = density(dim, seed);
        let psi = canonical_purification(&rho).unwrap();
        prop_assert!((vec_norm(&psi) - 1.0).abs() < 1e-12);
        let proj = ComplexMatrix::outer(&psi, &psi);
        let back = partial_trace(&proj, &[dim, dim], &[1]).unwrap();
        prop_assert!(back.sub(&rho).max_abs() < 1e-10);
    }

    #[test]
    fn entropy_lies_between_zero_and_log_dim(seed in 0u64..5000, dim in 2usize..6) {
        let rho = density(dim, seed);
        let h = von_neumann_entropy(&rho, CUT).unwrap();
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= (dim as f64).log2() + 1e-12);
    }

    #[test]
    fn relative_entropy_between_states_is_nonnegative(seed in 0u64..5000, dim in 2usize..5) {
        let rho = density(dim, seed);
        let sigma = density(dim, seed.wrapping_add(1));
        let d = relative_entropy(&rho, &sigma, CUT).unwrap();
        prop_assert!(d.value >= -1e-10);
    }
}
