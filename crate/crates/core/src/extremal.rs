//! The equality-attaining construction: m unit vectors with a common
//! pairwise overlap s, an anchor vector u, and the rank-one tuple
//! A_k = u x_k*. Closed-form norm evaluations cross-check the numerical
//! path through the linear-algebra kernel.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matlin::{self, inner, outer, vec_norm, ComplexMatrix};
use crate::schatten::{MatrixTuple, PExponent};

/// Rank-one equiangular family: unit vectors x_1..x_m with pairwise inner
/// product s, anchor u, and the tuple (u x_1*, ..., u x_m*).
#[derive(Debug, Clone)]
pub struct EquiangularFamily {
    pub m: usize,
    pub s: f64,
    pub vectors: Vec<Vec<Complex64>>,
    pub anchor: Vec<Complex64>,
    pub tuple: MatrixTuple,
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "family size m must be at least 2, got {m}"
        )));
    }
    Ok(())
}

fn check_s(s: f64) -> Result<()> {
    if !s.is_finite() || !(0.0..=1.0).contains(&s) {
        return Err(Error::SOutOfRange(s));
    }
    Ok(())
}

/// The m x m Gram matrix (1−s) I + s J; PSD for s ∈ [0, 1] with spectrum
/// {1 + (m−1)s} ∪ {1 − s (multiplicity m−1)}.
pub fn build_gram(m: usize, s: f64) -> Result<ComplexMatrix> {
    check_m(m)?;
    check_s(s)?;
    Ok(ComplexMatrix::from_fn(m, m, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(s, 0.0)
        }
    }))
}

/// Builds the family in C^m with the first standard basis vector as anchor.
pub fn build_family(m: usize, s: f64) -> Result<EquiangularFamily> {
    build_family_with(m, s, None, None)
}

/// Builds the family with an optional explicit unit anchor and an optional
/// embedding dimension dim ≥ m (vectors padded with zeros; padding changes
/// no norm in the ratio).
pub fn build_family_with(
    m: usize,
    s: f64,
    anchor: Option<&[Complex64]>,
    dim: Option<usize>,
) -> Result<EquiangularFamily> {
    let gram = build_gram(m, s)?;
    let x = matlin::gram_factor(&gram)?;
    let dim = dim.unwrap_or(m);
    if dim < m {
        return Err(Error::DimensionMismatch(format!(
            "embedding dimension {dim} is smaller than the family size {m}"
        )));
    }
    let vectors: Vec<Vec<Complex64>> = (0..m)
        .map(|k| {
            let mut col = x.column(k);
            col.resize(dim, Complex64::new(0.0, 0.0));
            col
        })
        .collect();
    let anchor: Vec<Complex64> = match anchor {
        Some(u) => {
            if u.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "anchor has length {}, expected {dim}",
                    u.len()
                )));
            }
            if u.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
            if (vec_norm(u) - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "anchor must be a unit vector, norm is {}",
                    vec_norm(u)
                )));
            }
            u.to_vec()
        }
        None => {
            let mut e = vec![Complex64::new(0.0, 0.0); dim];
            e[0] = Complex64::new(1.0, 0.0);
            e
        }
    };
    let matrices: Vec<ComplexMatrix> = vectors.iter().map(|x_k| outer(&anchor, x_k)).collect();
    let tuple = MatrixTuple::new(matrices)?;
    Ok(EquiangularFamily {
        m,
        s,
        vectors,
        anchor,
        tuple,
    })
}

impl EquiangularFamily {
    /// Largest deviation from the defining relations: unit norms and the
    /// common pairwise overlap.
    pub fn max_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (j, xj) in self.vectors.iter().enumerate() {
            worst = worst.max((vec_norm(xj) - 1.0).abs());
            for xk in self.vectors.iter().skip(j + 1) {
                let ip = inner(xj, xk);
                worst = worst.max((ip - Complex64::new(self.s, 0.0)).norm());
            }
        }
        worst
    }
}

/// Closed form for ‖Σ A_k‖_F²: m + m(m−1)s.
pub fn sum_norm_sq(m: usize, s: f64) -> f64 {
    let mf = m as f64;
    mf + mf * (mf - 1.0) * s
}

/// Closed form for ‖Σ |A_k|‖_F²: m + m(m−1)s².
pub fn abs_sum_norm_sq(m: usize, s: f64) -> f64 {
    let mf = m as f64;
    mf + mf * (mf - 1.0) * s * s
}

/// The squared Frobenius ratio (1 + (m−1)s) / (1 + (m−1)s²).
pub fn frobenius_ratio_sq(m: usize, s: f64) -> f64 {
    let mf = m as f64;
    (1.0 + (mf - 1.0) * s) / (1.0 + (mf - 1.0) * s * s)
}

/// The overlap maximizing the Frobenius ratio: 1/(1+√m). This form avoids
/// the 0/0 of (√m−1)/(m−1) at m = 1 and its cancellation for small m.
pub fn optimal_overlap(m: usize) -> f64 {
    1.0 / (1.0 + (m as f64).sqrt())
}

/// log(x^p + (m−1) y^p)^(1/p) evaluated stably for any p ≥ 1 and
/// x ≥ 1 ≥ y ≥ 0.
fn log_p_mean(log_x: f64, log_y: f64, m: usize, p: PExponent) -> f64 {
    let mf = m as f64;
    match p {
        PExponent::Infinity => log_x,
        PExponent::Finite(p) => {
            let t1 = p * log_x;
            let t2 = (mf - 1.0).ln() + p * log_y; // -inf when y = 0 or m = 1
            let hi = t1.max(t2);
            (hi + ((t1 - hi).exp() + (t2 - hi).exp()).ln()) / p
        }
    }
}

/// Ratio of the rank-one family in the overlap parametrization:
/// √(m + m(m−1)s) / ((1+(m−1)s)^p + (m−1)(1−s)^p)^(1/p), with the p = ∞
/// denominator 1 + (m−1)s. Evaluated in the log domain so large p is safe.
pub fn family_ratio_p(m: usize, s: f64, p: PExponent) -> Result<f64> {
    check_m(m)?;
    check_s(s)?;
    p.validate()?;
    let mf = m as f64;
    let top = 1.0 + (mf - 1.0) * s; // the large eigenvalue of Σ x_k x_k*
    let log_num = 0.5 * (mf.ln() + top.ln());
    let log_den = log_p_mean(top.ln(), (1.0 - s).ln(), m, p);
    Ok((log_num - log_den).exp())
}

/// Same ratio in the eigenvalue-gap parametrization y = (1+(m−1)s)/(1−s):
/// √(y (y+m−1)) / (y^p + m − 1)^(1/p).
pub fn family_ratio_y(y: f64, m: usize, p: PExponent) -> Result<f64> {
    check_m(m)?;
    p.validate()?;
    if !y.is_finite() || y < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "gap parameter y must satisfy y >= 1, got {y}"
        )));
    }
    let mf = m as f64;
    let log_num = 0.5 * (y.ln() + (y + mf - 1.0).ln());
    let log_den = log_p_mean(y.ln(), 0.0, m, p);
    Ok((log_num - log_den).exp())
}

/// y = (1 + (m−1)s) / (1 − s), mapping [0, 1) onto [1, ∞).
pub fn y_from_overlap(s: f64, m: usize) -> Result<f64> {
    check_m(m)?;
    if !s.is_finite() || !(0.0..1.0).contains(&s) {
        return Err(Error::SOutOfRange(s));
    }
    Ok((1.0 + (m as f64 - 1.0) * s) / (1.0 - s))
}

/// Inverse of `y_from_overlap`: s = (y − 1) / (y + m − 1).
pub fn overlap_from_y(y: f64, m: usize) -> Result<f64> {
    check_m(m)?;
    if !y.is_finite() || y < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "gap parameter y must satisfy y >= 1, got {y}"
        )));
    }
    Ok((y - 1.0) / (y + m as f64 - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequality;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn gram_examples() {
        let g = build_gram(2, 0.0).unwrap();
        assert!(g.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);

        let g = build_gram(3, 0.5).unwrap();
        let spec = matlin::hermitian_eig(&g).unwrap();
        approx(spec.eigenvalues[0], 2.0, 1e-13);
        approx(spec.eigenvalues[1], 0.5, 1e-13);
        approx(spec.eigenvalues[2], 0.5, 1e-13);

        let g = build_gram(2, 1.0).unwrap();
        let spec = matlin::svd(&g).unwrap();
        assert!(spec.values[1] < 1e-13); // rank one
        assert!(build_gram(2, 1.2).is_err());
        assert!(build_gram(1, 0.5).is_err());
    }

    #[test]
    fn family_satisfies_defining_relations() {
        for (m, s) in [(2, 0.3), (4, 0.0), (5, 1.0), (3, 0.25)] {
            let fam = build_family(m, s).unwrap();
            assert!(fam.max_defect() < 1e-9, "defect {}", fam.max_defect());
            // |A_k| = x_k x_k*
            for (k, a_k) in fam.tuple.members().iter().enumerate() {
                let abs = matlin::abs_value(a_k).unwrap();
                let proj = outer(&fam.vectors[k], &fam.vectors[k]);
                assert!(abs.max_abs_diff(&proj) < 1e-9);
            }
        }
    }

    #[test]
    fn family_ratio_matches_known_values() {
        let s = 1.0 / (1.0 + 2.0f64.sqrt());
        let fam = build_family(2, s).unwrap();
        let r = inequality::ratio(&fam.tuple, PExponent::Finite(2.0)).unwrap();
        approx(r.ratio, ((1.0 + 2.0f64.sqrt()) / 2.0).sqrt(), 1e-9);

        let fam = build_family(3, 0.0).unwrap();
        let r = inequality::ratio(&fam.tuple, PExponent::Finite(2.0)).unwrap();
        approx(r.ratio, 1.0, 1e-10);

        // m = 9 at the optimal overlap 1/4 gives exactly sqrt(2)
        let fam = build_family(9, optimal_overlap(9)).unwrap();
        approx(optimal_overlap(9), 0.25, 1e-15);
        let r = inequality::ratio(&fam.tuple, PExponent::Finite(2.0)).unwrap();
        approx(r.ratio, 2.0f64.sqrt(), 1e-9);
    }

    #[test]
    fn closed_forms() {
        approx(sum_norm_sq(2, 0.0), 2.0, 1e-15);
        approx(abs_sum_norm_sq(2, 0.0), 2.0, 1e-15);
        let s = 1.0 / (1.0 + 2.0f64.sqrt());
        approx(
            sum_norm_sq(2, s) / abs_sum_norm_sq(2, s),
            (1.0 + 2.0f64.sqrt()) / 2.0,
            1e-14,
        );
        // numerical cross-check against the built family
        for (m, s) in [(2usize, 0.4), (5, 0.7), (3, 0.1)] {
            let fam = build_family(m, s).unwrap();
            let lhs = fam.tuple.sum().frobenius_norm().powi(2);
            let rhs = fam.tuple.sum_abs().unwrap().frobenius_norm().powi(2);
            approx(lhs, sum_norm_sq(m, s), 1e-8 * sum_norm_sq(m, s));
            approx(rhs, abs_sum_norm_sq(m, s), 1e-8 * abs_sum_norm_sq(m, s));
        }
    }

    #[test]
    fn ratio_function_and_stationarity() {
        for m in [2usize, 5, 9, 16] {
            approx(frobenius_ratio_sq(m, 0.0), 1.0, 1e-15);
            approx(frobenius_ratio_sq(m, 1.0), 1.0, 1e-15);
            let s = optimal_overlap(m);
            approx(frobenius_ratio_sq(m, s), (1.0 + (m as f64).sqrt()) / 2.0, 1e-13);
            // stationarity: (m-1) s² + 2 s − 1 = 0
            let res = (m as f64 - 1.0) * s * s + 2.0 * s - 1.0;
            assert!(res.abs() <= 1e-12, "stationarity residual {res}");
        }
        approx(optimal_overlap(4), 1.0 / 3.0, 1e-15);
        approx(optimal_overlap(9), 0.25, 1e-15);
        approx(optimal_overlap(2), 0.41421356237309515, 1e-15);
    }

    #[test]
    fn family_ratio_p_identities() {
        // p = 2 reduces to the square root of the Frobenius ratio
        for (m, s) in [(2usize, 0.3), (7, 0.9), (4, 0.0)] {
            let a = family_ratio_p(m, s, PExponent::Finite(2.0)).unwrap();
            approx(a, frobenius_ratio_sq(m, s).sqrt(), 1e-12);
        }
        // p = 1: sqrt(m + m(m-1)s)/m, reaching 1 at s = 1
        let m = 5;
        for s in [0.0, 0.4, 1.0] {
            let a = family_ratio_p(m, s, PExponent::Finite(1.0)).unwrap();
            approx(a, sum_norm_sq(m, s).sqrt() / m as f64, 1e-12);
        }
        approx(family_ratio_p(5, 1.0, PExponent::Finite(1.0)).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn parametrization_round_trip() {
        approx(y_from_overlap(0.0, 4).unwrap(), 1.0, 1e-15);
        approx(overlap_from_y(1.0, 4).unwrap(), 0.0, 1e-15);
        for m in [2usize, 3, 10] {
            for s in [0.0, 0.2, 0.5, 0.9, 0.99] {
                let y = y_from_overlap(s, m).unwrap();
                approx(overlap_from_y(y, m).unwrap(), s, 1e-12);
            }
        }
        // at p = 2 the maximizer in y is 1 + sqrt(m)
        for m in [2usize, 4, 9] {
            let y = y_from_overlap(optimal_overlap(m), m).unwrap();
            approx(y, 1.0 + (m as f64).sqrt(), 1e-10);
            let r = family_ratio_y(y, m, PExponent::Finite(2.0)).unwrap();
            approx(r, ((1.0 + (m as f64).sqrt()) / 2.0).sqrt(), 1e-13);
        }
    }

    #[test]
    fn anchor_and_embedding() {
        // padded family keeps all ratios; complex anchor allowed
        let inv = 0.5f64.sqrt();
        let anchor = vec![
            Complex64::new(0.0, inv),
            Complex64::new(inv, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let fam = build_family_with(2, 0.3, Some(&anchor), Some(4)).unwrap();
        assert_eq!(fam.tuple.member_rows(), 4);
        let r = inequality::ratio(&fam.tuple, PExponent::Finite(2.0)).unwrap();
        let plain = build_family(2, 0.3).unwrap();
        let r0 = inequality::ratio(&plain.tuple, PExponent::Finite(2.0)).unwrap();
        approx(r.ratio, r0.ratio, 1e-10);

        let bad = vec![Complex64::new(1.0, 1.0); 2];
        assert!(build_family_with(2, 0.3, Some(&bad), None).is_err());
    }
}
