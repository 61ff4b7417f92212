//! Property tests for the linear-algebra kernel: every factorization must
//! reconstruct its input and keep its factors orthonormal.

use abssum::matlin::{self, ComplexMatrix};
use abssum::sample;
use num_complex::Complex64;
use proptest::prelude::*;

fn square_matrix(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n * n).prop_map(move |entries| {
            ComplexMatrix::new(
                n,
                n,
                entries
                    .into_iter()
                    .map(|(re, im)| Complex64::new(re, im))
                    .collect(),
            )
            .unwrap()
        })
    })
}

fn hermitian_psd(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    square_matrix(max_n).prop_map(|b| {
        let p = &b.adjoint() * &b;
        // mirror so the product is exactly Hermitian
        ComplexMatrix::from_fn(p.rows(), p.cols(), |i, j| {
            if i <= j {
                p.get(i, j)
            } else {
                p.get(j, i).conj()
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn svd_reconstructs_and_is_orthonormal(a in square_matrix(5)) {
        let spec = matlin::svd(&a).unwrap();
        let scale = spec.values.first().copied().unwrap_or(0.0).max(1e-30);
        prop_assert!(spec.values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(spec.values.iter().all(|&s| s >= 0.0));
        let recon = spec.reconstruct();
        prop_assert!(recon.max_abs_diff(&a) <= 1e-10 * scale);
        let n = a.rows();
        let uu = &spec.left_factor.adjoint() * &spec.left_factor;
        prop_assert!(uu.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        let vv = &spec.right_factor.adjoint() * &spec.right_factor;
        prop_assert!(vv.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
    }

    #[test]
    fn abs_value_spectrum_is_the_singular_spectrum(a in square_matrix(5)) {
        let sv = matlin::svd(&a).unwrap().values;
        let s1 = sv.first().copied().unwrap_or(0.0).max(1e-30);
        let abs = matlin::abs_value(&a).unwrap();
        let ev = matlin::hermitian_eig(&abs).unwrap().eigenvalues;
        for (e, s) in ev.iter().zip(&sv) {
            prop_assert!((e - s).abs() <= 1e-9 * s1, "eig {e} vs sv {s}");
        }
        // result squared is A*A
        let sq = &abs * &abs;
        let gram = &a.adjoint() * &a;
        prop_assert!(sq.max_abs_diff(&gram) <= 1e-10 * s1 * s1.max(1.0));
    }

    #[test]
    fn svd_values_are_unitarily_invariant(a in square_matrix(4), seed in 0u64..1u64 << 48) {
        let mut rng = sample::rng_from_seed(seed);
        let n = a.rows();
        let w = sample::unitary_matrix(&mut rng, n);
        let v = sample::unitary_matrix(&mut rng, n);
        let sv = matlin::svd(&a).unwrap().values;
        let s1 = sv.first().copied().unwrap_or(0.0).max(1e-30);
        let rotated = &(&w * &a) * &v;
        let sv2 = matlin::svd(&rotated).unwrap().values;
        for (x, y) in sv.iter().zip(&sv2) {
            prop_assert!((x - y).abs() <= 1e-9 * s1);
        }
    }

    #[test]
    fn polar_reconstructs_with_unitary_isometry(a in square_matrix(5)) {
        let pf = matlin::polar(&a).unwrap();
        let n = a.rows();
        let recon = &pf.isometry * &pf.positive_part;
        let scale = a.frobenius_norm().max(1e-30);
        prop_assert!((&recon - &a).frobenius_norm() <= 1e-9 * scale);
        let uu = &pf.isometry.adjoint() * &pf.isometry;
        prop_assert!((&uu - &ComplexMatrix::identity(n)).frobenius_norm() <= 1e-9);
        // positive part agrees with abs_value
        let abs = matlin::abs_value(&a).unwrap();
        prop_assert!(pf.positive_part.max_abs_diff(&abs) == 0.0);
    }

    #[test]
    fn gram_factor_squares_back(g in hermitian_psd(5)) {
        let x = matlin::gram_factor(&g).unwrap();
        let xx = &x.adjoint() * &x;
        let scale = g.frobenius_norm().max(1e-30);
        prop_assert!((&xx - &g).frobenius_norm() <= 1e-9 * scale);
    }

    #[test]
    fn psd_power_round_trips(p in hermitian_psd(4)) {
        for a in [0.25f64, 0.5, 2.0] {
            let forward = matlin::psd_power(&p, a).unwrap();
            let back = matlin::psd_power(&forward, 1.0 / a).unwrap();
            let scale = p.frobenius_norm().max(1e-30);
            prop_assert!((&back - &p).frobenius_norm() <= 1e-8 * scale);
        }
    }
}
