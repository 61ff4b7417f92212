//! Evaluates the inequalities on concrete inputs: the central ratio
//! ‖Σ A_k‖_p / ‖Σ |A_k|‖_p, the sharp Frobenius bound, the matrix
//! Cauchy–Schwarz trace bound, the block-positivity fact, the geometric-mean
//! bound, and the power-family subadditivity bound with its (√m)^(1−1/q)
//! constant.

use crate::error::{Error, Result};
use crate::matlin::{self, ComplexMatrix};
use crate::schatten::{schatten_norm, MatrixTuple, PExponent};

/// Contraction tolerance: operator norm up to 1 + 1e-10 is accepted.
pub const TOL_CONTRACTION: f64 = 1e-10;

/// Relative slack applied to theorem-backed bound checks; violations below
/// it are roundoff, above it a bug.
pub fn tol_ineq(bound: f64) -> f64 {
    1e-9 * bound.abs().max(1.0)
}

/// Outcome of comparing a value against an upper bound.
#[derive(Debug, Clone, Copy)]
pub struct BoundCheck {
    pub value: f64,
    pub bound: f64,
    pub satisfied: bool,
    /// bound − value; negative means the bound was exceeded.
    pub slack: f64,
}

impl BoundCheck {
    pub fn evaluate(value: f64, bound: f64) -> Self {
        let slack = bound - value;
        Self {
            value,
            bound,
            satisfied: slack >= -tol_ineq(bound),
            slack,
        }
    }
}

/// The central ratio and its ingredients.
#[derive(Debug, Clone, Copy)]
pub struct RatioReport {
    /// ‖Σ A_k‖_p
    pub lhs: f64,
    /// ‖Σ |A_k|‖_p
    pub rhs: f64,
    pub ratio: f64,
    pub p: PExponent,
    pub m: usize,
}

fn ensure_square_tuple(t: &MatrixTuple) -> Result<()> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.member_rows(),
            cols: t.member_cols(),
        });
    }
    Ok(())
}

/// ‖Σ A_k‖_p / ‖Σ |A_k|‖_p. The denominator vanishes only when every member
/// is zero, which is rejected as `AllZeroTuple`.
pub fn ratio(t: &MatrixTuple, p: PExponent) -> Result<RatioReport> {
    p.validate()?;
    ensure_square_tuple(t)?;
    if t.is_all_zero() {
        return Err(Error::AllZeroTuple);
    }
    let lhs = schatten_norm(&t.sum(), p)?;
    let rhs = schatten_norm(&t.sum_abs()?, p)?;
    if rhs == 0.0 {
        return Err(Error::AllZeroTuple);
    }
    Ok(RatioReport {
        lhs,
        rhs,
        ratio: lhs / rhs,
        p,
        m: t.len(),
    })
}

/// The sharp Frobenius constant √((1+√m)/2).
pub fn frobenius_bound(m: usize) -> f64 {
    ((1.0 + (m as f64).sqrt()) / 2.0).sqrt()
}

/// Checks the sharp Frobenius inequality on a tuple. This is a theorem: a
/// violation beyond the roundoff slack indicates an implementation bug.
pub fn frobenius_bound_check(t: &MatrixTuple) -> Result<BoundCheck> {
    let r = ratio(t, PExponent::Finite(2.0))?;
    Ok(BoundCheck::evaluate(r.ratio, frobenius_bound(r.m)))
}

/// The universal bound (√m)^(1−1/p): equal to 1 at p = 1 and √m at p = ∞.
pub fn universal_bound(p: PExponent, m: usize) -> f64 {
    let mf = m as f64;
    match p {
        PExponent::Infinity => mf.sqrt(),
        PExponent::Finite(p) if p == 1.0 => 1.0,
        PExponent::Finite(p) => (0.5 * (1.0 - 1.0 / p) * mf.ln()).exp(),
    }
}

/// Matrix Cauchy–Schwarz trace bound: for PSD X, Y, a contraction Q and any
/// t > 0,  4 |Tr(Q X Y)| ≤ t Tr(X² + Y²) + (1/t) Tr(XY + YX).
pub fn lemma_mcs_check(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    q: &ComplexMatrix,
    t: f64,
) -> Result<BoundCheck> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "trace bound parameter t must be positive, got {t}"
        )));
    }
    ensure_psd(x)?;
    ensure_psd(y)?;
    let qn = matlin::operator_norm(q)?;
    if qn > 1.0 + TOL_CONTRACTION {
        return Err(Error::NotContraction { norm: qn });
    }
    let xy = x * y;
    let value = 4.0 * (q * &xy).trace().norm();
    let sq = (&(x * x) + &(y * y)).trace().re;
    let cross = (&xy + &(y * x)).trace().re;
    let bound = t * sq + cross / t;
    Ok(BoundCheck::evaluate(value, bound))
}

fn ensure_psd(p: &ComplexMatrix) -> Result<()> {
    let spec = matlin::hermitian_eig(p)?;
    let scale = spec
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, &x| m.max(x.abs()));
    if let Some(&min) = spec.eigenvalues.last() {
        if min < -matlin::TOL_PSD * scale {
            return Err(Error::NotPsd {
                eigenvalue: min,
                tol: matlin::TOL_PSD,
            });
        }
    }
    Ok(())
}

/// Positivity of the block matrix [[|A*|, A], [A*, |A|]]. The reported value
/// is the negative part of the smallest eigenvalue; the bound is the PSD
/// clamp window at the block's scale.
pub fn block_positivity_check(a: &ComplexMatrix) -> Result<BoundCheck> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let abs_a = matlin::abs_value(a)?;
    let abs_a_star = matlin::abs_value(&a.adjoint())?;
    let astar = a.adjoint();
    let block = ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => abs_a_star.get(i, j),
        (true, false) => a.get(i, j - n),
        (false, true) => astar.get(i - n, j),
        (false, false) => abs_a.get(i - n, j - n),
    });
    let spec = matlin::hermitian_eig(&block)?;
    let lambda_min = *spec.eigenvalues.last().expect("nonempty spectrum");
    let lambda_max = spec.eigenvalues.first().copied().unwrap_or(0.0);
    let scale = lambda_max.abs().max(1.0);
    Ok(BoundCheck::evaluate((-lambda_min).max(0.0), matlin::TOL_PSD * scale))
}

fn power_exponent_ok(a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) || !a.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "power-family exponent must lie in (0, 1], got {a}"
        )));
    }
    Ok(())
}

/// Geometric-mean bound for the power family f(x) = x^a:
/// ‖f(|S|)‖_q ≤ ‖f(P)‖_q^{1/2} ‖f(Q)‖_q^{1/2} with S = Σ A_i, P = Σ |A_i*|,
/// Q = Σ |A_i|.
pub fn geomean_bound_check(t: &MatrixTuple, q: PExponent, a: f64) -> Result<BoundCheck> {
    q.validate()?;
    power_exponent_ok(a)?;
    ensure_square_tuple(t)?;
    if t.is_all_zero() {
        return Err(Error::AllZeroTuple);
    }
    let s = t.sum();
    let abs_s = matlin::abs_value(&s)?;
    let value = schatten_norm(&matlin::psd_power(&abs_s, a)?, q)?;
    let p_mat = t.sum_abs_adjoint()?;
    let q_mat = t.sum_abs()?;
    let np = schatten_norm(&matlin::psd_power(&p_mat, a)?, q)?;
    let nq = schatten_norm(&matlin::psd_power(&q_mat, a)?, q)?;
    Ok(BoundCheck::evaluate(value, (np * nq).sqrt()))
}

/// Power-family subadditivity bound:
/// ‖f(|Σ A_i|)‖_q ≤ (√m)^(1−1/q) ‖Σ f(|A_i|)‖_q with f(x) = x^a, a ∈ (0, 1].
pub fn prop31_check(t: &MatrixTuple, q: PExponent, a: f64) -> Result<BoundCheck> {
    q.validate()?;
    power_exponent_ok(a)?;
    ensure_square_tuple(t)?;
    if t.is_all_zero() {
        return Err(Error::AllZeroTuple);
    }
    let s = t.sum();
    let abs_s = matlin::abs_value(&s)?;
    let value = schatten_norm(&matlin::psd_power(&abs_s, a)?, q)?;

    let mut sum_f: Option<ComplexMatrix> = None;
    for m in t.members() {
        let f = matlin::psd_power(&matlin::abs_value(m)?, a)?;
        sum_f = Some(match sum_f {
            None => f,
            Some(prev) => &prev + &f,
        });
    }
    let rhs_norm = schatten_norm(&sum_f.expect("nonempty"), q)?;
    Ok(BoundCheck::evaluate(value, universal_bound(q, t.len()) * rhs_norm))
}
