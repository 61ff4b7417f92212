//! Numerical toolkit for Schatten-norm inequalities comparing a sum of
//! complex matrices against the sum of their absolute values.
//!
//! The library evaluates the ratio ‖Σ A_k‖_p / ‖Σ |A_k|‖_p, checks the sharp
//! Frobenius bound √((1+√m)/2) and the universal bound (√m)^(1−1/p),
//! constructs the equiangular rank-one families that attain equality,
//! computes the conjectured optimal constant c_p(m) from its root equation,
//! and searches for worst-case tuples with a derivative-free optimizer.

pub mod conjecture;
pub mod error;
pub mod extremal;
pub mod inequality;
pub mod matlin;
pub mod sample;
pub mod schatten;
pub mod search;
pub mod suites;

mod golden;

pub use error::{Error, Result};
pub use matlin::ComplexMatrix;
pub use schatten::{MatrixTuple, PExponent};
