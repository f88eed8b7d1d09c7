//! Counting the distinct expectation values a scheme consumes.
//!
//! A step `(A, B)` needs `⟨A⟩, ⟨B⟩, ⟨A²⟩, ⟨B²⟩, ⟨i[A,B]⟩` and `⟨{A,B}⟩`.
//! Each is expanded over `{I, λ₁..λ₈}` and the λ labels with nonzero
//! coefficient are the expectations the step requires.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::su_algebra::{
    decompose, decompose_bipartite, decompose_in, gellmann, pauli, Axis, HermitianOperator,
    OperatorBasis,
};
use crate::uncertainty::{GellMannPair, SettingFamily};
use crate::Result;

use super::scheme::{run_qutrit_scheme, SchemeConfig};

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MeasurementBudget {
    /// λ labels first required at each step.
    pub per_step: Vec<BTreeSet<usize>>,
    /// Size of the union of all per-step sets.
    pub total: usize,
}

/// `{A, B, A², B², i[A,B], {A,B}}`.
pub(crate) fn step_operators(
    a: &HermitianOperator,
    b: &HermitianOperator,
) -> Result<[HermitianOperator; 6]> {
    Ok([
        a.clone(),
        b.clone(),
        a.square(),
        b.square(),
        a.i_commutator(b)?,
        a.anticommutator(b)?,
    ])
}

/// λ labels needed to evaluate `Q(λ_a, λ_b, ρ)`.
pub fn step_requirements(a: usize, b: usize) -> Result<BTreeSet<usize>> {
    let mut req = BTreeSet::new();
    for op in step_operators(&gellmann(a)?, &gellmann(b)?)? {
        req.extend(decompose(&op)?.support());
    }
    Ok(req)
}

/// Budget of an ordered list of `(a, b)` λ-label steps; only newly required
/// labels count at each step.
pub fn measurement_budget(steps: &[(usize, usize)]) -> Result<MeasurementBudget> {
    let mut seen = BTreeSet::new();
    let mut per_step = Vec::with_capacity(steps.len());
    for &(a, b) in steps {
        let new: BTreeSet<usize> = step_requirements(a, b)?
            .difference(&seen)
            .copied()
            .collect();
        seen.extend(new.iter().copied());
        per_step.push(new);
    }
    Ok(MeasurementBudget {
        per_step,
        total: seen.len(),
    })
}

/// One row of the tomography-vs-uncertainty comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetRow {
    pub system: String,
    /// `d² − 1` parameters for full tomography.
    pub tomography: usize,
    /// The count as printed alongside the tomography figure.
    pub printed: String,
    pub computed_min: usize,
    pub computed_max: usize,
    pub note: String,
}

/// Set of `(a, b)` basis labels of `Bₐ ⊗ B_b` terms.
pub type LabelPairs = BTreeSet<(usize, usize)>;

/// Support of the step operators of a two-party setting, split into
/// correlators and local terms.
pub(crate) fn bipartite_requirements(
    setting: &SettingFamily,
    basis: OperatorBasis,
) -> Result<(LabelPairs, LabelPairs)> {
    let (a, b) = setting.observables()?;
    let mut correlators = BTreeSet::new();
    let mut local = BTreeSet::new();
    for op in step_operators(&a, &b)? {
        let d = decompose_bipartite(&op, basis)?;
        for (i, j) in d.support() {
            if i != 0 && j != 0 {
                correlators.insert((i, j));
            } else {
                local.insert((i, j));
            }
        }
    }
    Ok((correlators, local))
}

fn probe_angles(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| k as f64 * std::f64::consts::TAU / n as f64)
        .collect()
}

/// Computed counts next to the printed comparison table.
///
/// - Single qubit: spins along z and x.
/// - Two qubits: non-identity product terms over a grid of planar settings
///   with `A ≠ ±B`.
/// - Single qutrit: the pure-at-first-pair trace and the full traversal.
/// - Two qutrits: correlators over a grid of constrained settings, avoiding
///   the degenerate `θ₃ ∈ {0, π}`.
pub fn budget_table() -> Result<Vec<BudgetRow>> {
    let mut rows = Vec::new();

    let mut qubit = BTreeSet::new();
    for op in step_operators(&pauli(Axis::Z), &pauli(Axis::X))? {
        qubit.extend(decompose_in(&op, OperatorBasis::Pauli)?.support());
    }
    rows.push(BudgetRow {
        system: "single qubit".into(),
        tomography: 3,
        printed: "3".into(),
        computed_min: qubit.len(),
        computed_max: qubit.len(),
        note: "spins along z and x".into(),
    });

    let angles = probe_angles(8);
    let (mut lo, mut hi) = (usize::MAX, 0);
    for &m in &angles {
        for &n in &angles {
            for &p in &angles {
                for &q in &angles {
                    let s = SettingFamily::PlanarTwoQubit {
                        phi_m: m,
                        phi_n: n,
                        phi_p: p,
                        phi_q: q,
                    };
                    let (a, b) = s.observables()?;
                    // A = ±B makes Q vanish for every state; not a usable setting.
                    if a.max_abs_diff(&b) < 1e-12 || a.max_abs_diff(&b.scaled(-1.0)) < 1e-12 {
                        continue;
                    }
                    let (c, l) = bipartite_requirements(&s, OperatorBasis::Pauli)?;
                    let count = c.len() + l.len();
                    lo = lo.min(count);
                    hi = hi.max(count);
                }
            }
        }
    }
    rows.push(BudgetRow {
        system: "two qubit".into(),
        tomography: 15,
        printed: "3-5".into(),
        computed_min: lo,
        computed_max: hi,
        note: "non-identity Pauli products over planar settings, local terms included".into(),
    });

    let mut pure_point = [0.0; 8];
    pure_point[7] = -1.0;
    let pure = crate::state_space::qutrit_density(&pure_point)?;
    let mixed = crate::state_space::qutrit_density(&[0.0; 8])?;
    let cfg = SchemeConfig::default();
    let first = run_qutrit_scheme(&pure, &cfg)?.budget.total;
    let full = run_qutrit_scheme(&mixed, &cfg)?.budget.total;
    rows.push(BudgetRow {
        system: "single qutrit".into(),
        tomography: 8,
        printed: "4-8".into(),
        computed_min: first,
        computed_max: full,
        note: "pure at first pair / full traversal".into(),
    });

    let (mut lo, mut hi) = (usize::MAX, 0);
    let mut locals = BTreeSet::new();
    for &t3 in angles.iter().filter(|t| t.sin().abs() > 1e-9) {
        for &t4 in &angles {
            let s = SettingFamily::TwoQutrit {
                pair: GellMannPair::P12,
                theta2: t3 + t4,
                theta3: t3,
                theta4: t4,
            };
            let (c, l) = bipartite_requirements(&s, OperatorBasis::GellMann)?;
            lo = lo.min(c.len());
            hi = hi.max(c.len());
            locals.extend(l);
        }
    }
    rows.push(BudgetRow {
        system: "two qutrit".into(),
        tomography: 80,
        printed: "4-8".into(),
        computed_min: lo,
        computed_max: hi,
        note: format!(
            "correlators over constrained settings; {} local terms not counted",
            locals.len()
        ),
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_level_is_four() {
        let req = step_requirements(3, 7).unwrap();
        assert_eq!(req, BTreeSet::from([3, 6, 7, 8]));
    }

    #[test]
    fn second_member_adds_nothing() {
        let b = measurement_budget(&[(3, 7), (3, 6)]).unwrap();
        assert_eq!(b.per_step[1], BTreeSet::new());
        assert_eq!(b.total, 4);
    }

    #[test]
    fn full_traversal_is_eight() {
        let steps = [(3, 7), (3, 6), (3, 5), (3, 4), (3, 1), (3, 2)];
        let b = measurement_budget(&steps).unwrap();
        assert_eq!(b.total, 8);
        let union: BTreeSet<usize> = b.per_step.iter().flatten().copied().collect();
        assert_eq!(union.len(), b.total);
    }

    #[test]
    fn table_rows() {
        let rows = budget_table().unwrap();
        let counts: Vec<(usize, usize, usize)> = rows
            .iter()
            .map(|r| (r.tomography, r.computed_min, r.computed_max))
            .collect();
        assert_eq!(counts, vec![(3, 3, 3), (15, 3, 7), (8, 4, 8), (80, 4, 8)]);
    }
}
