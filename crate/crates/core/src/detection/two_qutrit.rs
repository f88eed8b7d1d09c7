//! Two-qutrit pure/mixed classification over the constrained product
//! settings `θ₂ = θ₃ + θ₄`, which make `Q` vanish on every Schmidt-form pure
//! state.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::budget::{bipartite_requirements, LabelPairs};
use super::Verdict;
use crate::state_space::DensityMatrix;
use crate::su_algebra::OperatorBasis;
use crate::uncertainty::{
    q_max_over_settings, GellMannPair, MaximizerConfig, SettingFamily, SettingTemplate,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoQutritClassification {
    pub verdict: Verdict,
    pub epsilon: f64,
    pub q_max: f64,
    pub argmax: SettingFamily,
    /// Correlators `⟨λₐ ⊗ λ_b⟩` needed across the setting family.
    pub expectations_used: BTreeSet<(usize, usize)>,
    /// Local terms `⟨λₐ ⊗ I⟩`, `⟨I ⊗ λ_b⟩` also appearing in the expansion.
    pub local_terms: BTreeSet<(usize, usize)>,
}

/// Correlators and local terms required by the constrained settings of
/// `pair`, collected over an 8×8 grid of `(θ₃, θ₄)` offset by half a step so
/// that no point is degenerate.
pub fn two_qutrit_expectations(pair: GellMannPair) -> Result<(LabelPairs, LabelPairs)> {
    let mut correlators = BTreeSet::new();
    let mut local = BTreeSet::new();
    let step = std::f64::consts::TAU / 8.0;
    for k in 0..8 {
        for l in 0..8 {
            let t3 = (k as f64 + 0.5) * step;
            let t4 = (l as f64 + 0.5) * step;
            let s = SettingFamily::TwoQutrit {
                pair,
                theta2: t3 + t4,
                theta3: t3,
                theta4: t4,
            };
            let (c, l) = bipartite_requirements(&s, OperatorBasis::GellMann)?;
            correlators.extend(c);
            local.extend(l);
        }
    }
    Ok((correlators, local))
}

/// Maximizes `Q` over the `(λ₁, λ₂)` constrained settings and calls the state
/// mixed iff the maximum reaches `epsilon`.
pub fn classify_two_qutrit(
    rho: &DensityMatrix,
    epsilon: f64,
    config: &MaximizerConfig,
) -> Result<TwoQutritClassification> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let template = SettingTemplate::two_qutrit_default();
    let m = q_max_over_settings(rho, &template, config)?;
    let (mut expectations_used, mut local_terms) = two_qutrit_expectations(GellMannPair::P12)?;
    let (c, l) = bipartite_requirements(&m.argmax, OperatorBasis::GellMann)?;
    expectations_used.extend(c);
    local_terms.extend(l);
    Ok(TwoQutritClassification {
        verdict: if m.q_max >= epsilon {
            Verdict::Mixed
        } else {
            Verdict::Pure
        },
        epsilon,
        q_max: m.q_max,
        argmax: m.argmax,
        expectations_used,
        local_terms,
    })
}
