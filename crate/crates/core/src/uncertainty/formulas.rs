//! Printed closed-form expressions for `Q` and the linear entropy on specific
//! state families, evaluated literally.
//!
//! These are hypotheses, not ground truth: each is compared against the
//! matrix evaluation by [`concordance`](super::concordance). Suspected typos
//! are kept as written.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::closed_form::{q_qubit_closed, q_qutrit_closed};
use crate::state_space::{one_param_range, param_qutrit, MixtureParam, SchmidtCoeffs};
use crate::{Error, Result};

/// Identifier of a printed expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "&'static str", try_from = "String")]
pub enum FormulaId {
    /// `(1 − (r̂·t̂)²)(1 − |n|²)`, qubit spins.
    QubitClosed,
    /// Star/wedge expansion for `â·λ`, `b̂·λ`.
    QutritClosed,
    /// `(4/9)(2 − n₈)(1 + n₈)` for `(λ₃, λ₇)` and `(λ₃, λ₆)`.
    OneParamN8,
    /// Constant `4/9` for `(λ₃, λ_b)`, `b ∈ {4,5,6,7}`, on the `n₁` family.
    OneParamN1,
    /// `(n₃, n₄)` section, `B = λ₅`.
    TwoParamLambda5,
    /// `(n₃, n₄)` section, `B = λ₄`.
    TwoParamLambda4,
    /// `(n₃, n₄, n₅)` section, `B = λ₅`.
    ThreeParamLambda5,
    /// `(n₃, n₄, n₅)` section, `B = λ₄`.
    ThreeParamLambda4,
    /// Linear entropy `(3/2)p(1 − p)` of a two-pure-state mixture.
    MixtureEntropy,
    /// `Q` of the mixture on the constrained two-qutrit settings.
    MixtureQ,
    /// `4k₁²(1 − k₆²)p(1 − p)`, the maximum of [`MixtureQ`](Self::MixtureQ).
    MixtureQmax,
    /// Linear entropy `(2/3)(1 − p²)` of the isotropic state.
    IsotropicEntropy,
    /// `Q` of the isotropic state on the constrained settings.
    IsotropicQ,
    /// `(16/81)(1 − p)(1 + 2p)`, the maximum of [`IsotropicQ`](Self::IsotropicQ).
    IsotropicQmax,
    /// `4k₁²k₂²k₃² sin(θ₂ − θ₃ − θ₄)` on pure Schmidt states with `θ₂ = θ₃ + θ₄`.
    PureTwoQutrit,
    /// The same expression with all three angles free.
    PureTwoQutritFree,
}

impl FormulaId {
    pub const ALL: [FormulaId; 16] = [
        Self::QubitClosed,
        Self::QutritClosed,
        Self::OneParamN8,
        Self::OneParamN1,
        Self::TwoParamLambda5,
        Self::TwoParamLambda4,
        Self::ThreeParamLambda5,
        Self::ThreeParamLambda4,
        Self::MixtureEntropy,
        Self::MixtureQ,
        Self::MixtureQmax,
        Self::IsotropicEntropy,
        Self::IsotropicQ,
        Self::IsotropicQmax,
        Self::PureTwoQutrit,
        Self::PureTwoQutritFree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::QubitClosed => "qubit_closed",
            Self::QutritClosed => "qutrit_closed",
            Self::OneParamN8 => "one_param_n8",
            Self::OneParamN1 => "one_param_n1",
            Self::TwoParamLambda5 => "two_param_lambda5",
            Self::TwoParamLambda4 => "two_param_lambda4",
            Self::ThreeParamLambda5 => "three_param_lambda5",
            Self::ThreeParamLambda4 => "three_param_lambda4",
            Self::MixtureEntropy => "mixture_entropy",
            Self::MixtureQ => "mixture_q",
            Self::MixtureQmax => "mixture_qmax",
            Self::IsotropicEntropy => "isotropic_entropy",
            Self::IsotropicQ => "isotropic_q",
            Self::IsotropicQmax => "isotropic_qmax",
            Self::PureTwoQutrit => "pure_two_qutrit",
            Self::PureTwoQutritFree => "pure_two_qutrit_free",
        }
    }

    /// The expression as printed, in plain text.
    pub fn expression(self) -> &'static str {
        match self {
            Self::QubitClosed => "(1 - (r.t)^2)(1 - |n|^2)",
            Self::QutritClosed => "star/wedge expansion in a, b, n",
            Self::OneParamN8 => "(4/9)(2 - n8)(1 + n8)",
            Self::OneParamN1 => "4/9",
            Self::TwoParamLambda5 => "(2/9)(2 + sqrt3 n3)(1 - 2 n3^2) - n4^2/3",
            Self::TwoParamLambda4 => {
                "(1/9)(4 - 8 n3^2 - 4 sqrt3 n3^3 - 11 n4^2 + 2 sqrt3 n3 (1 + 4 n4^2))"
            }
            Self::ThreeParamLambda5 => {
                "(1/9)(4 - 8 n3^2 - 4 sqrt3 n3^3 - 3 n4^2 - 11 n5^2 + 2 sqrt3 n3 (1 + 4 n5^2))"
            }
            Self::ThreeParamLambda4 => {
                "(1/9)(4 - 8 n3^2 - 4 sqrt3 n3^3 - 3 n5^2 - 11 n4^2 + 2 sqrt3 n3 (1 + 4 n4^2))"
            }
            Self::MixtureEntropy => "(3/2) p (1 - p)",
            Self::MixtureQ => {
                "4 k1^2 p (1-p) (1 - k6^2 - 4 k4^2 k5^2 (1-p) cos^2(t3 + t4)) sin^2(t3)"
            }
            Self::MixtureQmax => "4 k1^2 (1 - k6^2) p (1 - p)",
            Self::IsotropicEntropy => "(2/3)(1 - p^2)",
            Self::IsotropicQ => {
                "(8/81)(p - 1)(-3 - 3p + 2p^2 + (p - 1) cos(2 t3) + 2p^2 cos(2(t3 + t4)))^2 sin(t3)"
            }
            Self::IsotropicQmax => "(16/81)(1 - p)(1 + 2p)",
            Self::PureTwoQutrit | Self::PureTwoQutritFree => "4 k1^2 k2^2 k3^2 sin(t2 - t3 - t4)",
        }
    }

    pub fn param_names(self) -> Vec<&'static str> {
        match self {
            Self::QubitClosed => vec!["r1", "r2", "r3", "t1", "t2", "t3", "n1", "n2", "n3"],
            Self::QutritClosed => vec![
                "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "b1", "b2", "b3", "b4", "b5", "b6",
                "b7", "b8", "n1", "n2", "n3", "n4", "n5", "n6", "n7", "n8",
            ],
            Self::OneParamN8 => vec!["n8", "b"],
            Self::OneParamN1 => vec!["n1", "b"],
            Self::TwoParamLambda5 | Self::TwoParamLambda4 => vec!["n3", "n4"],
            Self::ThreeParamLambda5 | Self::ThreeParamLambda4 => vec!["n3", "n4", "n5"],
            Self::MixtureEntropy | Self::MixtureQmax => {
                vec!["k1", "k2", "k3", "k4", "k5", "k6", "p"]
            }
            Self::MixtureQ => vec!["k1", "k2", "k3", "k4", "k5", "k6", "p", "theta3", "theta4"],
            Self::IsotropicEntropy | Self::IsotropicQmax => vec!["p"],
            Self::IsotropicQ => vec!["p", "theta3", "theta4"],
            Self::PureTwoQutrit | Self::PureTwoQutritFree => {
                vec!["k1", "k2", "k3", "theta2", "theta3", "theta4"]
            }
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownFormula(s.to_string()))
    }
}

impl From<FormulaId> for &'static str {
    fn from(id: FormulaId) -> Self {
        id.as_str()
    }
}

impl TryFrom<String> for FormulaId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn out_of_range(id: FormulaId, detail: impl Into<String>) -> Error {
    Error::FamilyOutOfRange {
        family: id.as_str().into(),
        detail: detail.into(),
    }
}

fn check_probability(id: FormulaId, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(out_of_range(id, format!("p = {p} outside [0, 1]")))
    }
}

fn check_b(id: FormulaId, b: f64, allowed: &[usize]) -> Result<()> {
    if allowed.iter().any(|&k| k as f64 == b) {
        Ok(())
    } else {
        Err(out_of_range(id, format!("b = {b} not one of {allowed:?}")))
    }
}

/// Validated mixture parameters from `[k1..k6, p, ..]`.
pub(crate) fn mixture_params(params: &[f64]) -> Result<MixtureParam> {
    MixtureParam::new(
        params[6],
        SchmidtCoeffs::new(params[0..3].to_vec())?,
        SchmidtCoeffs::new(params[3..6].to_vec())?,
    )
}

/// Evaluates the printed expression `id` at `params` (ordered as
/// [`FormulaId::param_names`]).
pub fn q_family_formula(id: FormulaId, params: &[f64]) -> Result<f64> {
    let names = id.param_names();
    if params.len() != names.len() {
        return Err(Error::InvalidInput(format!(
            "{id} takes {} parameters ({}), got {}",
            names.len(),
            names.join(", "),
            params.len()
        )));
    }
    if let Some(pos) = params.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "{id}: {} is not finite",
            names[pos]
        )));
    }
    let s3 = 3f64.sqrt();
    let v = match id {
        FormulaId::QubitClosed => {
            let v3 = |k: usize| [params[k], params[k + 1], params[k + 2]];
            q_qubit_closed(&v3(0), &v3(3), &v3(6))?
        }
        FormulaId::QutritClosed => {
            let v8 = |k: usize| -> [f64; 8] { std::array::from_fn(|i| params[k + i]) };
            q_qutrit_closed(&v8(0), &v8(8), &v8(16))?
        }
        FormulaId::OneParamN8 => {
            let n8 = params[0];
            check_b(id, params[1], &[6, 7])?;
            let (lo, hi) = one_param_range(8)?;
            if n8 < lo - 1e-12 || n8 > hi + 1e-12 {
                return Err(out_of_range(id, format!("n8 must lie in [{lo}, {hi}]")));
            }
            (4.0 / 9.0) * (2.0 - n8) * (1.0 + n8)
        }
        FormulaId::OneParamN1 => {
            let n1 = params[0];
            check_b(id, params[1], &[4, 5, 6, 7])?;
            let (lo, hi) = one_param_range(1)?;
            if n1 < lo - 1e-12 || n1 > hi + 1e-12 {
                return Err(out_of_range(id, format!("n1 must lie in [{lo}, {hi}]")));
            }
            4.0 / 9.0
        }
        FormulaId::TwoParamLambda5 | FormulaId::TwoParamLambda4 => {
            let (n3, n4) = (params[0], params[1]);
            param_qutrit(&[3, 4], params)?;
            if id == FormulaId::TwoParamLambda5 {
                (2.0 / 9.0) * (2.0 + s3 * n3) * (1.0 - 2.0 * n3 * n3) - n4 * n4 / 3.0
            } else {
                (4.0 - 8.0 * n3 * n3 - 4.0 * s3 * n3.powi(3) - 11.0 * n4 * n4
                    + 2.0 * s3 * n3 * (1.0 + 4.0 * n4 * n4))
                    / 9.0
            }
        }
        FormulaId::ThreeParamLambda5 | FormulaId::ThreeParamLambda4 => {
            let (n3, n4, n5) = (params[0], params[1], params[2]);
            param_qutrit(&[3, 4, 5], params)?;
            // The λ₄ form is the λ₅ form with n₄ and n₅ exchanged.
            let (quiet, loud) = if id == FormulaId::ThreeParamLambda5 {
                (n4, n5)
            } else {
                (n5, n4)
            };
            (4.0 - 8.0 * n3 * n3 - 4.0 * s3 * n3.powi(3) - 3.0 * quiet * quiet - 11.0 * loud * loud
                + 2.0 * s3 * n3 * (1.0 + 4.0 * loud * loud))
                / 9.0
        }
        FormulaId::MixtureEntropy => {
            let m = mixture_params(params)?;
            1.5 * m.p * (1.0 - m.p)
        }
        FormulaId::MixtureQ => {
            let m = mixture_params(params)?;
            let k = [m.psi1.values(), m.psi2.values()].concat();
            let (k1, k4, k5, k6) = (k[0], k[3], k[4], k[5]);
            let (p, t3, t4) = (m.p, params[7], params[8]);
            4.0 * k1
                * k1
                * p
                * (1.0 - p)
                * (1.0 - k6 * k6 - 4.0 * k4 * k4 * k5 * k5 * (1.0 - p) * (t3 + t4).cos().powi(2))
                * t3.sin().powi(2)
        }
        FormulaId::MixtureQmax => {
            let m = mixture_params(params)?;
            let (k1, k6) = (params[0], params[5]);
            4.0 * k1 * k1 * (1.0 - k6 * k6) * m.p * (1.0 - m.p)
        }
        FormulaId::IsotropicEntropy => {
            let p = params[0];
            check_probability(id, p)?;
            (2.0 / 3.0) * (1.0 - p * p)
        }
        FormulaId::IsotropicQ => {
            let (p, t3, t4) = (params[0], params[1], params[2]);
            check_probability(id, p)?;
            let inner = -3.0 - 3.0 * p
                + 2.0 * p * p
                + (p - 1.0) * (2.0 * t3).cos()
                + 2.0 * p * p * (2.0 * (t3 + t4)).cos();
            (8.0 / 81.0) * (p - 1.0) * inner * inner * t3.sin()
        }
        FormulaId::IsotropicQmax => {
            let p = params[0];
            check_probability(id, p)?;
            (16.0 / 81.0) * (1.0 - p) * (1.0 + 2.0 * p)
        }
        FormulaId::PureTwoQutrit | FormulaId::PureTwoQutritFree => {
            let k = SchmidtCoeffs::new(params[0..3].to_vec())?;
            let k = k.values();
            let (t2, t3, t4) = (params[3], params[4], params[5]);
            4.0 * (k[0] * k[1] * k[2]).powi(2) * (t2 - t3 - t4).sin()
        }
    };
    Ok(v)
}
