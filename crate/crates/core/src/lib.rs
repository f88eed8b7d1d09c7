//! # gurmix-core
//!
//! Detects whether a qubit or qutrit state is pure or mixed from the
//! Robertson–Schrödinger uncertainty functional
//!
//! ```text
//! Q(A, B, ρ) = (ΔA)²(ΔB)² − |⟨[A,B]⟩/2|² − |⟨{A,B}⟩/2 − ⟨A⟩⟨B⟩|²  ≥ 0
//! ```
//!
//! For suitably chosen observables `Q` vanishes on pure states and is strictly
//! positive on mixed ones, so it acts as a mixedness witness that needs only a
//! handful of expectation values.
//!
//! The crate is organized as:
//!
//! - [`su_algebra`]: Pauli, Gell-Mann and spin-1 operators, SU(3) structure
//!   constants, the `*` / `∧` vector products and basis decomposition.
//! - [`state_space`]: Bloch parametrizations, density matrices, Ω₃ geometry,
//!   purity and linear entropy, and the state families used throughout.
//! - [`uncertainty`]: the exact matrix evaluation of `Q`, closed-form
//!   expressions, observable setting families, the settings maximizer and the
//!   formula-vs-matrix concordance engine.
//! - [`detection`]: the sequential single-qutrit purity scheme, measurement
//!   budget accounting, the two-qutrit classifier and blind-spot analysis.
//! - [`report`], [`io`], [`audit`]: sweep tables, JSON/CSV formats and the
//!   random invariant audit used by the command-line tool.
//!
//! Gell-Mann indices are 1-based (`λ₁..λ₈`) everywhere in the public API;
//! Bloch vectors are plain arrays where component `k - 1` multiplies `λ_k`.

#![forbid(unsafe_code)]

pub mod audit;
pub mod detection;
mod error;
pub mod io;
pub mod report;
pub mod state_space;
pub mod su_algebra;
pub mod uncertainty;

pub use error::{Error, Result};

pub use detection::{
    blind_spot, classify_two_qutrit, measurement_budget, run_qutrit_scheme, BlindSpot,
    BlindSpotFamily, MeasurementBudget, SchemeConfig, SchemeTrace, TwoQutritClassification,
    Verdict,
};
pub use state_space::{
    bloch_of, is_pure, isotropic, linear_entropy, mixture, omega3_membership, purity,
    qubit_density, qutrit_density, schmidt_pure, werner_qubit, BlochVector, DensityMatrix,
    Membership, MixtureParam, QubitBloch, QutritBloch, SchmidtCoeffs,
};
pub use su_algebra::{
    conjugate, decompose, gellmann, pauli, spin1, star, structure_constants, tensor, wedge, Axis,
    CMatrix, Decomposition, HermitianOperator, StructureConstants,
};
pub use uncertainty::{
    concordance, expectation, q_family_formula, q_max_over_settings, q_oracle, variance,
    ConcordanceReport, ConcordanceVerdict, FormulaId, GellMannPair, GridSpec, MaximizerConfig,
    QReport, SettingFamily, SettingTemplate,
};
