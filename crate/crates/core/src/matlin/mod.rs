//! Complex dense linear algebra kernel: Hermitian eigendecomposition, SVD,
//! matrix absolute value, polar decomposition, PSD powers and Gram
//! factorization.
//!
//! The algorithms are cyclic Jacobi iterations (see `jacobi`); the contract
//! exposed here is only the reconstruction quality: factorizations
//! reconstruct their input to `TOL_RECON` relative to its scale.

mod jacobi;
mod matrix;

pub use matrix::{inner, outer, vec_norm, ComplexMatrix};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative reconstruction tolerance contracted by every factorization.
pub const TOL_RECON: f64 = 1e-10;
/// Relative Hermitian-symmetry tolerance; worse inputs are rejected rather
/// than symmetrized silently, to catch caller bugs.
pub const TOL_HERM: f64 = 1e-10;
/// Relative eigenvalue clamp window for positive semidefinite inputs,
/// absorbing roundoff from forming products like A*A.
pub const TOL_PSD: f64 = 1e-9;

/// Ordered real eigenvalues of a Hermitian matrix with the diagonalizing unitary.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    /// Eigenvalues sorted nonincreasing.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianSpectrum {
    /// V diag(eigenvalues) V*.
    pub fn reconstruct(&self) -> ComplexMatrix {
        reconstruct_hermitian(&self.eigenvalues, &self.vectors)
    }
}

/// Singular values sorted nonincreasing with thin orthonormal factors.
#[derive(Debug, Clone)]
pub struct SingularSpectrum {
    pub values: Vec<f64>,
    pub left_factor: ComplexMatrix,
    pub right_factor: ComplexMatrix,
}

impl SingularSpectrum {
    /// U diag(values) V*.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.values.len();
        let scaled = ComplexMatrix::from_fn(self.left_factor.rows(), k, |i, j| {
            self.left_factor.get(i, j) * self.values[j]
        });
        &scaled * &self.right_factor.adjoint()
    }
}

/// Polar decomposition A = U P with U unitary (singular inputs get a
/// unitary completion over the null spaces) and P positive semidefinite.
#[derive(Debug, Clone)]
pub struct PolarForm {
    pub isometry: ComplexMatrix,
    pub positive_part: ComplexMatrix,
}

fn ensure_finite(a: &ComplexMatrix) -> Result<()> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn ensure_square(a: &ComplexMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

fn ensure_hermitian(h: &ComplexMatrix) -> Result<()> {
    ensure_square(h)?;
    let scale = h.frobenius_norm();
    let defect = h.hermitian_defect();
    if defect > TOL_HERM * scale {
        return Err(Error::NotHermitian {
            defect: if scale > 0.0 { defect / scale } else { defect },
            tol: TOL_HERM,
        });
    }
    Ok(())
}

/// Builds V diag(vals) V* with exact Hermitian symmetry (lower triangle
/// mirrored, diagonal forced real).
fn reconstruct_hermitian(vals: &[f64], v: &ComplexMatrix) -> ComplexMatrix {
    let n = v.rows();
    let k = vals.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..k {
                acc += v.get(i, l) * vals[l] * v.get(j, l).conj();
            }
            if i == j {
                out.set(i, i, Complex64::new(acc.re, 0.0));
            } else {
                out.set(i, j, acc);
                out.set(j, i, acc.conj());
            }
        }
    }
    out
}

/// Clamps tiny negative eigenvalues of a nominally PSD spectrum to zero.
/// Anything below the clamp window is a genuine negativity and is rejected.
fn clamp_psd(vals: &[f64]) -> Result<Vec<f64>> {
    let scale = vals.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let floor = -TOL_PSD * scale;
    let mut out = Vec::with_capacity(vals.len());
    for &x in vals {
        if x < floor {
            return Err(Error::NotPsd {
                eigenvalue: x,
                tol: TOL_PSD,
            });
        }
        out.push(x.max(0.0));
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Rejects inputs whose Hermitian defect exceeds `TOL_HERM` relative to the
/// Frobenius scale.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianSpectrum> {
    ensure_finite(h)?;
    ensure_hermitian(h)?;
    let (eigenvalues, vectors) = jacobi::hermitian_jacobi(h);
    Ok(HermitianSpectrum { eigenvalues, vectors })
}

/// Thin singular value decomposition of an arbitrary rectangular matrix.
pub fn svd(a: &ComplexMatrix) -> Result<SingularSpectrum> {
    ensure_finite(a)?;
    let (values, left_factor, right_factor) = jacobi::one_sided_jacobi_svd(a);
    Ok(SingularSpectrum {
        values,
        left_factor,
        right_factor,
    })
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(svd(a)?.values.first().copied().unwrap_or(0.0))
}

/// Matrix absolute value |A| = (A*A)^(1/2), computed as V diag(s) V* from
/// the SVD of A, so its eigenvalues are exactly the singular values of A.
pub fn abs_value(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_finite(a)?;
    ensure_square(a)?;
    let spec = svd(a)?;
    Ok(reconstruct_hermitian(&spec.values, &spec.right_factor))
}

/// Polar decomposition A = U |A| of a square matrix. For singular A the
/// isometry is completed to a full unitary over the kernel/cokernel; only
/// U P = A and unitarity are contractual, the null-space gauge is not.
pub fn polar(a: &ComplexMatrix) -> Result<PolarForm> {
    ensure_finite(a)?;
    ensure_square(a)?;
    let spec = svd(a)?;
    let isometry = &spec.left_factor * &spec.right_factor.adjoint();
    let positive_part = reconstruct_hermitian(&spec.values, &spec.right_factor);
    Ok(PolarForm {
        isometry,
        positive_part,
    })
}

/// Raises a Hermitian PSD matrix to the real power `a > 0` on its spectrum.
pub fn psd_power(p: &ComplexMatrix, a: f64) -> Result<ComplexMatrix> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "psd_power exponent must be a positive finite real, got {a}"
        )));
    }
    ensure_finite(p)?;
    let spec = hermitian_eig(p)?;
    let clamped = clamp_psd(&spec.eigenvalues)?;
    let powered: Vec<f64> = if a == 1.0 {
        clamped
    } else {
        clamped.iter().map(|&x| x.powf(a)).collect()
    };
    Ok(reconstruct_hermitian(&powered, &spec.vectors))
}

/// Hermitian PSD square root X = G^(1/2), so that X*X = G. Columns of X are
/// the vectors realizing G as a Gram matrix. The square root (rather than a
/// triangular factorization) keeps exact rank deficiency pivot-free.
pub fn gram_factor(g: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_finite(g)?;
    let spec = hermitian_eig(g)?;
    let clamped = clamp_psd(&spec.eigenvalues)?;
    let roots: Vec<f64> = clamped.iter().map(|&x| x.sqrt()).collect();
    Ok(reconstruct_hermitian(&roots, &spec.vectors))
}
