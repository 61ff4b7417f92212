//! Schatten p-norms for p in [1, ∞], direct sums, and the weak
//! (log-)majorization comparisons used by the proof-step checks.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matlin::{self, ComplexMatrix};

/// Relative slack allowed in majorization comparisons.
pub const TOL_MAJ: f64 = 1e-9;
/// Values at or below this magnitude are treated as exact zeros in
/// log-majorization product chains.
const LOG_ZERO_FLOOR: f64 = 1e-300;

/// Schatten exponent p ∈ [1, ∞]. Infinity is a distinct tag, never a large
/// float, so CLI parsing and norm evaluation stay unambiguous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    /// Validating constructor for the finite case.
    pub fn finite(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::PBelowOne(p));
        }
        Ok(PExponent::Finite(p))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PExponent::Infinity)
    }

    /// Checks the p ≥ 1 invariant (variants are public, so operations
    /// re-validate at the boundary).
    pub fn validate(&self) -> Result<()> {
        match self {
            PExponent::Finite(p) if !p.is_finite() || *p < 1.0 => Err(Error::PBelowOne(*p)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(PExponent::Infinity);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("cannot parse Schatten exponent '{s}'")))?;
        PExponent::finite(p)
    }
}

/// Ordered tuple (A_1, ..., A_m) of same-shape matrices, the argument of
/// every inequality in the crate.
#[derive(Debug, Clone)]
pub struct MatrixTuple {
    matrices: Vec<ComplexMatrix>,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let (r, c) = (matrices[0].rows(), matrices[0].cols());
        for m in &matrices {
            if (m.rows(), m.cols()) != (r, c) {
                return Err(Error::DimensionMismatch(format!(
                    "tuple members must share a shape: {}x{} vs {}x{}",
                    r,
                    c,
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { matrices })
    }

    pub fn members(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    /// Number of summands m.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        false // m >= 1 by construction
    }

    pub fn member_rows(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn member_cols(&self) -> usize {
        self.matrices[0].cols()
    }

    pub fn is_square(&self) -> bool {
        self.matrices[0].is_square()
    }

    pub fn is_all_zero(&self) -> bool {
        self.matrices.iter().all(|m| m.is_zero())
    }

    /// Σ A_k.
    pub fn sum(&self) -> ComplexMatrix {
        let mut acc = self.matrices[0].clone();
        for m in &self.matrices[1..] {
            acc = &acc + m;
        }
        acc
    }

    /// Σ |A_k| (square members only).
    pub fn sum_abs(&self) -> Result<ComplexMatrix> {
        let mut acc: Option<ComplexMatrix> = None;
        for m in &self.matrices {
            let a = matlin::abs_value(m)?;
            acc = Some(match acc {
                None => a,
                Some(prev) => &prev + &a,
            });
        }
        Ok(acc.expect("tuple is nonempty"))
    }

    /// Σ |A_k*|.
    pub fn sum_abs_adjoint(&self) -> Result<ComplexMatrix> {
        let mut acc: Option<ComplexMatrix> = None;
        for m in &self.matrices {
            let a = matlin::abs_value(&m.adjoint())?;
            acc = Some(match acc {
                None => a,
                Some(prev) => &prev + &a,
            });
        }
        Ok(acc.expect("tuple is nonempty"))
    }

    /// Scales every member by the real factor c.
    pub fn scale_re(&self, c: f64) -> Self {
        Self {
            matrices: self.matrices.iter().map(|m| m.scale_re(c)).collect(),
        }
    }

    /// √(Σ_k ‖A_k‖_F²), the norm of the concatenated tuple.
    pub fn concat_frobenius(&self) -> f64 {
        self.matrices
            .iter()
            .map(|m| m.frobenius_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Schatten p-norm from singular values: (Σ s_j^p)^(1/p) for finite p, the
/// largest singular value for p = ∞. The largest value is scaled out before
/// powering so large p cannot overflow.
pub fn schatten_norm(a: &ComplexMatrix, p: PExponent) -> Result<f64> {
    p.validate()?;
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let values = matlin::svd(a)?.values;
    Ok(schatten_from_values(&values, p))
}

/// Schatten norm of a nonnegative singular-value vector.
pub(crate) fn schatten_from_values(values: &[f64], p: PExponent) -> f64 {
    let s1 = values.first().copied().unwrap_or(0.0);
    if s1 == 0.0 {
        return 0.0;
    }
    match p {
        PExponent::Infinity => s1,
        PExponent::Finite(p) if p == 1.0 => values.iter().sum(),
        PExponent::Finite(p) => {
            let sum: f64 = values.iter().map(|&s| (s / s1).powf(p)).sum();
            s1 * sum.powf(1.0 / p)
        }
    }
}

/// Frobenius norm by the entrywise formula — the cross-check path that does
/// not touch the SVD.
pub fn frobenius(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(a.frobenius_norm())
}

/// Block-diagonal direct sum ⊕ X_i of the square members of a tuple.
pub fn direct_sum(t: &MatrixTuple) -> Result<ComplexMatrix> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.member_rows(),
            cols: t.member_cols(),
        });
    }
    let n = t.member_rows();
    let total = n * t.len();
    let mut out = ComplexMatrix::zeros(total, total);
    for (k, m) in t.members().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                out.set(k * n + i, k * n + j, m.get(i, j));
            }
        }
    }
    Ok(out)
}

fn ensure_sorted_nonincreasing(v: &[f64]) -> Result<()> {
    for i in 1..v.len() {
        if v[i] > v[i - 1] {
            return Err(Error::UnsortedInput(i));
        }
    }
    Ok(())
}

/// Weak majorization: every leading partial sum of `a` is bounded by the
/// matching partial sum of `b`, up to `TOL_MAJ` relative slack.
pub fn weak_majorization_holds(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "majorization vectors differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    ensure_sorted_nonincreasing(a)?;
    ensure_sorted_nonincreasing(b)?;
    let mut sa = 0.0;
    let mut sb = 0.0;
    for k in 0..a.len() {
        sa += a[k];
        sb += b[k];
        let tol = TOL_MAJ * sa.abs().max(sb.abs()).max(1.0);
        if sa > sb + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weak log-majorization on nonnegative nonincreasing vectors: leading
/// partial products of `a` bounded by those of `b`. Products are compared
/// as sums of logarithms; entries at or below 1e-300 are exact zeros, and
/// once the right side hits zero the left side must be zero as well.
pub fn weak_log_majorization_holds(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "majorization vectors differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    ensure_sorted_nonincreasing(a)?;
    ensure_sorted_nonincreasing(b)?;
    for (idx, &x) in a.iter().chain(b.iter()).enumerate() {
        if x < 0.0 {
            return Err(Error::NegativeEntry {
                index: idx % a.len(),
                value: x,
            });
        }
    }
    let slack = TOL_MAJ.ln_1p();
    let mut log_a = 0.0;
    let mut log_b = 0.0;
    let mut a_zero = false;
    let mut b_zero = false;
    for k in 0..a.len() {
        a_zero |= a[k] <= LOG_ZERO_FLOOR;
        b_zero |= b[k] <= LOG_ZERO_FLOOR;
        if !a_zero {
            log_a += a[k].ln();
        }
        if !b_zero {
            log_b += b[k].ln();
        }
        if b_zero {
            if !a_zero {
                return Ok(false);
            }
            // both products are zero from here on; all later comparisons hold
            return Ok(true);
        }
        if !a_zero && log_a > log_b + slack {
            return Ok(false);
        }
    }
    Ok(true)
}
