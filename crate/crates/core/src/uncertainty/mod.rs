//! The uncertainty functional
//!
//! ```text
//! Q(A, B, ρ) = (ΔA)²(ΔB)² − |⟨[A,B]⟩/2|² − |⟨{A,B}⟩/2 − ⟨A⟩⟨B⟩|²
//! ```
//!
//! [`q_oracle`] evaluates it by direct matrix arithmetic and is the ground
//! truth for everything else in this module: the closed forms in
//! [`closed_form`] and the printed family expressions in [`formulas`] are
//! checked against it by the [`concordance`] engine.

pub mod closed_form;
pub mod concordance;
pub mod formulas;
pub mod maximize;
pub mod settings;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::state_space::DensityMatrix;
use crate::su_algebra::{CMatrix, HermitianOperator};
use crate::{Error, Result};

pub use closed_form::{q_qubit_closed, q_qutrit_closed};
pub use concordance::{
    concordance, ConcordancePoint, ConcordanceReport, ConcordanceVerdict, GridSpec,
};
pub use formulas::{q_family_formula, FormulaId};
pub use maximize::{q_max_over_settings, MaximizerConfig, SettingMaximum, SettingTemplate};
pub use settings::{GellMannPair, SettingFamily};

/// Variance, commutator and covariance breakdown of `Q` for one `(A, B, ρ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QReport {
    pub var_a: f64,
    pub var_b: f64,
    /// `|⟨[A,B]⟩/2|²`
    pub commutator_term: f64,
    /// `|⟨{A,B}⟩/2 − ⟨A⟩⟨B⟩|²`
    pub anticommutator_term: f64,
    pub q: f64,
}

fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

fn check(rho: &DensityMatrix, op: &HermitianOperator) -> Result<()> {
    if rho.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: op.dim(),
        });
    }
    Ok(())
}

/// `tr(ρA)`.
pub fn expectation(rho: &DensityMatrix, a: &HermitianOperator) -> Result<f64> {
    check(rho, a)?;
    Ok(trace_product(rho.matrix(), a.matrix()).re)
}

/// `⟨A²⟩ − ⟨A⟩²`, clamped at zero.
pub fn variance(rho: &DensityMatrix, a: &HermitianOperator) -> Result<f64> {
    let mean = expectation(rho, a)?;
    let second = trace_product(rho.matrix(), &(a.matrix() * a.matrix())).re;
    Ok((second - mean * mean).max(0.0))
}

/// Exact evaluation of `Q(A, B, ρ)`.
pub fn q_oracle(
    rho: &DensityMatrix,
    a: &HermitianOperator,
    b: &HermitianOperator,
) -> Result<QReport> {
    check(rho, a)?;
    check(rho, b)?;
    let r = rho.matrix();
    let (am, bm) = (a.matrix(), b.matrix());
    let ab = am * bm;
    let ba = bm * am;

    let mean_a = trace_product(r, am).re;
    let mean_b = trace_product(r, bm).re;
    let var_a = (trace_product(r, &(am * am)).re - mean_a * mean_a).max(0.0);
    let var_b = (trace_product(r, &(bm * bm)).re - mean_b * mean_b).max(0.0);
    let comm = trace_product(r, &(&ab - &ba));
    let anti = trace_product(r, &(&ab + &ba));

    let commutator_term = (comm / 2.0).norm_sqr();
    let anticommutator_term = (anti / 2.0 - mean_a * mean_b).norm_sqr();
    let q = var_a * var_b - commutator_term - anticommutator_term;
    if !q.is_finite() {
        return Err(Error::Numerical("non-finite Q".into()));
    }
    Ok(QReport {
        var_a,
        var_b,
        commutator_term,
        anticommutator_term,
        q,
    })
}
