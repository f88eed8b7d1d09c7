//! Operational purity tests built on `Q`: the sequential single-qutrit
//! scheme, measurement-budget accounting, the two-qutrit classifier and the
//! ε blind-spot analysis.

mod blind_spot;
mod budget;
mod scheme;
mod two_qutrit;

use serde::{Deserialize, Serialize};

pub use blind_spot::{blind_spot, blind_spot_with, BlindSpot, BlindSpotFamily};
pub use budget::{
    budget_table, measurement_budget, step_requirements, BudgetRow, LabelPairs, MeasurementBudget,
};
pub use scheme::{
    run_qutrit_scheme, scheme_statistic, SchemeConfig, SchemeStep, SchemeTrace, DEFAULT_EPSILON,
};
pub use two_qutrit::{classify_two_qutrit, two_qutrit_expectations, TwoQutritClassification};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Pure,
    Mixed,
}
