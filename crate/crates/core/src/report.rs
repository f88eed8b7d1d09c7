//! Tabular reports: family sweeps, concordance batches and the budget table.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::detection::{
    classify_two_qutrit, run_qutrit_scheme, scheme_statistic, BudgetRow, SchemeConfig, Verdict,
};
use crate::state_space::{
    isotropic, linear_entropy, mixture, one_param_qutrit, qubit_density, werner_qubit,
    DensityMatrix, MixtureParam, SchmidtCoeffs,
};
use crate::su_algebra::{pauli, Axis};
use crate::uncertainty::{
    concordance, q_max_over_settings, q_oracle, ConcordanceReport, FormulaId, GridSpec,
    MaximizerConfig, SettingTemplate,
};
use crate::{Error, Result};

/// One-parameter family for [`sweep`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum SweepFamily {
    /// Qubit with Bloch vector `(0, 0, n)`, spins along z and x.
    Qubit,
    /// Single qutrit along `eᵢ`, judged by the sequential scheme.
    OneParam { i: usize },
    /// Isotropic two-qutrit state in `p`.
    Isotropic,
    /// `p|ψ₁⟩⟨ψ₁| + (1−p)|ψ₂⟩⟨ψ₂|` in `p`.
    Mixture {
        psi1: SchmidtCoeffs,
        psi2: SchmidtCoeffs,
    },
    /// Two-qubit Werner state in `p`, planar settings.
    WernerQubit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    /// Detection statistic: `Q` (qubit), the maximum over settings
    /// (two-party families) or the scheme statistic `min over pairs of
    /// max(Q₁, Q₂)` (single qutrit).
    pub q_max: f64,
    pub linear_entropy: f64,
    pub verdict: Verdict,
}

/// `start, start + step, …` up to `stop` (inclusive within half a step).
pub fn param_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::InvalidInput(format!(
            "range needs finite start <= stop and step > 0, got {start}..{stop} by {step}"
        )));
    }
    let n = ((stop - start) / step + 0.5).floor() as usize;
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

fn sweep_state(family: &SweepFamily, x: f64) -> Result<DensityMatrix> {
    match family {
        SweepFamily::Qubit => qubit_density([0.0, 0.0, x]),
        SweepFamily::OneParam { i } => one_param_qutrit(*i, x)?.density(),
        SweepFamily::Isotropic => isotropic(x),
        SweepFamily::Mixture { psi1, psi2 } => {
            mixture(&MixtureParam::new(x, psi1.clone(), psi2.clone())?)
        }
        SweepFamily::WernerQubit => werner_qubit(x),
    }
}

/// Evaluates the detection statistic, linear entropy and verdict along a family.
pub fn sweep(
    family: &SweepFamily,
    params: &[f64],
    epsilon: f64,
    maximizer: &MaximizerConfig,
) -> Result<Vec<SweepRow>> {
    // Validate the whole range before computing anything.
    let states = params
        .iter()
        .map(|&x| sweep_state(family, x))
        .collect::<Result<Vec<_>>>()?;
    let verdict = |q: f64| {
        if q >= epsilon {
            Verdict::Mixed
        } else {
            Verdict::Pure
        }
    };
    params
        .iter()
        .zip(&states)
        .map(|(&param, rho)| {
            let (q_max, v) = match family {
                SweepFamily::Qubit => {
                    let q = q_oracle(rho, &pauli(Axis::Z), &pauli(Axis::X))?.q;
                    (q, verdict(q))
                }
                SweepFamily::OneParam { .. } => {
                    let cfg = SchemeConfig::with_epsilon(epsilon);
                    (
                        scheme_statistic(rho, &cfg)?,
                        run_qutrit_scheme(rho, &cfg)?.verdict,
                    )
                }
                SweepFamily::Isotropic | SweepFamily::Mixture { .. } => {
                    let c = classify_two_qutrit(rho, epsilon, maximizer)?;
                    (c.q_max, c.verdict)
                }
                SweepFamily::WernerQubit => {
                    let q = q_max_over_settings(rho, &SettingTemplate::PlanarTwoQubit, maximizer)?
                        .q_max;
                    (q, verdict(q))
                }
            };
            Ok(SweepRow {
                param,
                q_max,
                linear_entropy: linear_entropy(rho),
                verdict: v,
            })
        })
        .collect()
}

pub fn write_sweep_csv(rows: &[SweepRow], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "param,q_max,linear_entropy,verdict")?;
    for r in rows {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:?}",
            r.param, r.q_max, r.linear_entropy, r.verdict
        )?;
    }
    Ok(())
}

/// Concordance for each id, in order.
pub fn concordance_batch(ids: &[FormulaId], spec: &GridSpec) -> Result<Vec<ConcordanceReport>> {
    ids.iter().map(|&id| concordance(id, spec)).collect()
}

/// Fixed-width summary, one line per report.
pub fn concordance_summary(reports: &[ConcordanceReport]) -> String {
    let mut out = format!(
        "{:<22} {:>6} {:>12} {:>14} {:>12}  {}\n",
        "formula", "points", "max_abs_diff", "fitted_ratio", "ratio_spread", "verdict"
    );
    let opt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6e}"));
    for r in reports {
        out.push_str(&format!(
            "{:<22} {:>6} {:>12.3e} {:>14} {:>12}  {}\n",
            r.formula_id.as_str(),
            r.grid_size,
            r.max_abs_diff,
            opt(r.fitted_ratio),
            opt(r.ratio_spread),
            r.verdict
        ));
    }
    out
}

pub fn budget_summary(rows: &[BudgetRow]) -> String {
    let mut out = format!(
        "{:<14} {:>11} {:>8} {:>9}  {}\n",
        "system", "tomography", "printed", "computed", "note"
    );
    for r in rows {
        let computed = if r.computed_min == r.computed_max {
            r.computed_min.to_string()
        } else {
            format!("{}-{}", r.computed_min, r.computed_max)
        };
        out.push_str(&format!(
            "{:<14} {:>11} {:>8} {:>9}  {}\n",
            r.system, r.tomography, r.printed, computed, r.note
        ));
    }
    out
}
