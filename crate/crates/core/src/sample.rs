//! Seeded random generators for matrices, tuples, unitaries and
//! contractions. Every generator is deterministic in its RNG stream, so
//! property suites and searches reproduce exactly.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matlin::{self, ComplexMatrix};
use crate::schatten::MatrixTuple;

/// Stream cipher RNG with a portable, stable seed expansion.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer, used to derive independent substream seeds.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent standard complex Gaussian entries (re and im each N(0,1)).
pub fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        data.push(Complex64::new(re, im));
    }
    ComplexMatrix::new(rows, cols, data).expect("gaussian entries are finite")
}

/// Random PSD matrix B*B from a Gaussian factor, scaled to unit Frobenius
/// norm to keep suites at a common scale.
pub fn psd_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let b = gaussian_matrix(rng, n, n);
    let p = &b.adjoint() * &b;
    // mirror the lower triangle so the product is exactly Hermitian
    let h = ComplexMatrix::from_fn(n, n, |i, j| {
        if i <= j {
            p.get(i, j)
        } else {
            p.get(j, i).conj()
        }
    });
    let scale = h.frobenius_norm();
    if scale > 0.0 {
        h.scale_re(1.0 / scale)
    } else {
        h
    }
}

/// Haar-ish random unitary: the polar isometry of a Gaussian matrix.
pub fn unitary_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    matlin::polar(&g).expect("finite square input").isometry
}

/// Random contraction: a Gaussian matrix divided by its operator norm times
/// a factor drawn from [1, 2].
pub fn contraction_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    let s1 = matlin::operator_norm(&g).expect("finite input");
    let factor: f64 = rng.gen_range(1.0..=2.0);
    if s1 > 0.0 {
        g.scale_re(1.0 / (s1 * factor))
    } else {
        g
    }
}

/// Tuple of m independent Gaussian matrices.
pub fn gaussian_tuple(rng: &mut ChaCha8Rng, m: usize, n: usize) -> MatrixTuple {
    MatrixTuple::new((0..m).map(|_| gaussian_matrix(rng, n, n)).collect())
        .expect("gaussian tuples are valid")
}

/// Tuple of m independent PSD matrices.
pub fn psd_tuple(rng: &mut ChaCha8Rng, m: usize, n: usize) -> MatrixTuple {
    MatrixTuple::new((0..m).map(|_| psd_matrix(rng, n)).collect()).expect("psd tuples are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinism_in_seed() {
        let a = gaussian_matrix(&mut rng_from_seed(7), 3, 3);
        let b = gaussian_matrix(&mut rng_from_seed(7), 3, 3);
        assert_eq!(a.data(), b.data());
        let c = gaussian_matrix(&mut rng_from_seed(8), 3, 3);
        assert!(a.max_abs_diff(&c) > 0.0);
    }

    #[test]
    fn unitary_is_unitary() {
        let u = unitary_matrix(&mut rng_from_seed(3), 4);
        let uu = &u.adjoint() * &u;
        assert!(uu.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn contraction_is_contractive() {
        for seed in 0..5 {
            let q = contraction_matrix(&mut rng_from_seed(seed), 4);
            assert!(matlin::operator_norm(&q).unwrap() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn psd_matrix_is_psd() {
        let p = psd_matrix(&mut rng_from_seed(11), 5);
        let spec = matlin::hermitian_eig(&p).unwrap();
        assert!(*spec.eigenvalues.last().unwrap() >= -1e-12);
    }
}
