//! Cyclic Jacobi kernels for Hermitian eigendecomposition and one-sided
//! Jacobi SVD. Unconditionally convergent at the matrix sizes this crate
//! works with (n <= 64), and accurate to roughly machine precision, which
//! is what the reconstruction contracts demand.

use num_complex::Complex64;

use super::matrix::{inner, vec_norm, ComplexMatrix};

const MAX_SWEEPS: usize = 128;
/// Off-diagonal termination threshold relative to the Frobenius scale.
const OFF_TOL: f64 = 1e-15;
/// Column-orthogonality termination threshold for the one-sided SVD.
const ORTHO_TOL: f64 = 1e-14;

/// 2x2 unitary that diagonalizes the Hermitian block [[app, apq], [conj(apq), aqq]].
///
/// Returned as (g11, g12, g21, g22) acting on the (p, q) plane: the phase of
/// apq is absorbed first, then a real Jacobi rotation is applied.
fn plane_rotation(app: f64, aqq: f64, apq: Complex64) -> (Complex64, Complex64, Complex64, Complex64) {
    let r = apq.norm();
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    (
        phase * c,
        phase * s,
        Complex64::new(-s, 0.0),
        Complex64::new(c, 0.0),
    )
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
///
/// The caller guarantees `h` is (numerically) Hermitian; only the Hermitian
/// part of the input influences the result. Returns eigenvalues sorted
/// nonincreasing and the matching unitary of column eigenvectors.
pub(crate) fn hermitian_jacobi(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = h.rows();
    // Work on the exact Hermitian part so the iteration's invariants hold.
    let mut a: Vec<Complex64> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let z = (h.get(i, j) + h.get(j, i).conj()) * 0.5;
            a.push(if i == j { Complex64::new(z.re, 0.0) } else { z });
        }
    }
    let mut v: Vec<Complex64> = ComplexMatrix::identity(n).data().to_vec();
    let scale = h.frobenius_norm();

    if scale > 0.0 && n > 1 {
        for _sweep in 0..MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[p * n + q].norm_sqr();
                }
            }
            if (2.0 * off).sqrt() <= OFF_TOL * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq.norm() <= OFF_TOL * scale * 1e-2 {
                        continue;
                    }
                    let app = a[p * n + p].re;
                    let aqq = a[q * n + q].re;
                    let (g11, g12, g21, g22) = plane_rotation(app, aqq, apq);
                    // A <- G* A G : columns first, then rows.
                    for i in 0..n {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = aip * g11 + aiq * g21;
                        a[i * n + q] = aip * g12 + aiq * g22;
                    }
                    for j in 0..n {
                        let apj = a[p * n + j];
                        let aqj = a[q * n + j];
                        a[p * n + j] = g11.conj() * apj + g21.conj() * aqj;
                        a[q * n + j] = g12.conj() * apj + g22.conj() * aqj;
                    }
                    // Pin the rotated pair to exact Hermitian form.
                    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
                    let sym = (a[p * n + q] + a[q * n + p].conj()) * 0.5;
                    a[p * n + q] = sym;
                    a[q * n + p] = sym.conj();
                    // V <- V G
                    for i in 0..n {
                        let vip = v[i * n + p];
                        let viq = v[i * n + q];
                        v[i * n + p] = vip * g11 + viq * g21;
                        v[i * n + q] = vip * g12 + viq * g22;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.partial_cmp(&a[i * n + i].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[i * n + order[j]]);
    (eigenvalues, vectors)
}

/// Thin SVD by one-sided Jacobi: returns (values, U, V) with values sorted
/// nonincreasing, `U` rows x k and `V` cols x k (k = min(rows, cols)), both
/// with orthonormal columns, such that A = U diag(values) V*.
pub(crate) fn one_sided_jacobi_svd(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix, ComplexMatrix) {
    if a.rows() < a.cols() {
        // A* = U S V*  =>  A = V S U*.
        let (s, u, v) = one_sided_jacobi_svd(&a.adjoint());
        return (s, v, u);
    }
    let rows = a.rows();
    let cols = a.cols();
    // Columns of w converge to s_j * u_j while w = A v holds throughout.
    let mut w: Vec<Vec<Complex64>> = (0..cols).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); cols];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    if cols > 1 {
        for _sweep in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..cols {
                for q in (p + 1)..cols {
                    let app: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
                    let aqq: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
                    if app == 0.0 || aqq == 0.0 {
                        continue;
                    }
                    let apq = inner(&w[p], &w[q]);
                    if apq.norm() <= ORTHO_TOL * app.sqrt() * aqq.sqrt() {
                        continue;
                    }
                    rotated = true;
                    let (g11, g12, g21, g22) = plane_rotation(app, aqq, apq);
                    for i in 0..rows {
                        let wip = w[p][i];
                        let wiq = w[q][i];
                        w[p][i] = wip * g11 + wiq * g21;
                        w[q][i] = wip * g12 + wiq * g22;
                    }
                    for i in 0..cols {
                        let vip = v[p][i];
                        let viq = v[q][i];
                        v[p][i] = vip * g11 + viq * g21;
                        v[q][i] = vip * g12 + viq * g22;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
    }

    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = w.iter().map(|col| vec_norm(col)).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());

    let values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    for (rank, &j) in order.iter().enumerate() {
        if norms[j] > 0.0 {
            u_cols.push(w[j].iter().map(|z| z / norms[j]).collect());
        } else {
            u_cols.push(complete_orthonormal(&u_cols[..rank], rows));
        }
    }

    let u = ComplexMatrix::from_fn(rows, cols, |i, j| u_cols[j][i]);
    let vm = ComplexMatrix::from_fn(cols, cols, |i, j| v[order[j]][i]);
    (values, u, vm)
}

/// Deterministically extends an orthonormal set by one vector, starting from
/// standard basis candidates and double Gram-Schmidt.
fn complete_orthonormal(existing: &[Vec<Complex64>], dim: usize) -> Vec<Complex64> {
    for cand in 0..dim {
        let mut r = vec![Complex64::new(0.0, 0.0); dim];
        r[cand] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for col in existing {
                let proj = inner(col, &r);
                for i in 0..dim {
                    r[i] -= proj * col[i];
                }
            }
        }
        let n = vec_norm(&r);
        if n > 0.5 {
            return r.iter().map(|z| z / n).collect();
        }
    }
    unreachable!("orthonormal completion always succeeds when existing set is smaller than dim");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let h = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let (vals, v) = hermitian_jacobi(&h);
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] + 1.0).abs() < 1e-14);
        // V unitary
        let vv = &v.adjoint() * &v;
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let h = ComplexMatrix::new(
            3,
            3,
            vec![
                c(2.0, 0.0), c(1.0, 1.0), c(0.0, -2.0),
                c(1.0, -1.0), c(-1.0, 0.0), c(0.5, 0.0),
                c(0.0, 2.0), c(0.5, 0.0), c(4.0, 0.0),
            ],
        )
        .unwrap();
        let (vals, v) = hermitian_jacobi(&h);
        let recon = &(&v * &ComplexMatrix::from_real_diag(&vals)) * &v.adjoint();
        assert!(recon.max_abs_diff(&h) < 1e-12);
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn svd_handles_rank_deficiency_and_rectangles() {
        let a = ComplexMatrix::new(
            3,
            2,
            vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0), c(-1.0, 1.0), c(-2.0, 2.0)],
        )
        .unwrap();
        let (s, u, v) = one_sided_jacobi_svd(&a);
        assert_eq!(s.len(), 2);
        assert!(s[1].abs() < 1e-12 * s[0]); // rank one
        let recon = &(&u * &ComplexMatrix::from_real_diag(&s)) * &v.adjoint();
        assert!(recon.max_abs_diff(&a) < 1e-12);
        let uu = &u.adjoint() * &u;
        assert!(uu.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn svd_of_zero_matrix() {
        let z = ComplexMatrix::zeros(3, 3);
        let (s, u, v) = one_sided_jacobi_svd(&z);
        assert!(s.iter().all(|&x| x == 0.0));
        let uu = &u.adjoint() * &u;
        assert!(uu.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
        let vv = &v.adjoint() * &v;
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
    }
}
