//! Sequential single-qutrit purity test.
//!
//! `A = λ₃` is fixed and `B` runs through the members of each pair in turn.
//! Both members of one pair giving `Q < ε` certifies purity; if every pair
//! fails the state is mixed.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::budget::{measurement_budget, MeasurementBudget};
use super::Verdict;
use crate::state_space::DensityMatrix;
use crate::su_algebra::{conjugate, gellmann, CMatrix};
use crate::uncertainty::q_oracle;
use crate::{Error, Result};

/// Default uncertainty threshold for noise-free matrix input.
pub const DEFAULT_EPSILON: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    pub epsilon: f64,
    /// λ labels of the `B` pairs, in the order they are tried.
    pub pair_sequence: Vec<(usize, usize)>,
    /// λ label of `A`.
    pub fixed_a: usize,
    /// When the first member of a pair passes and the second fails, declare
    /// the state mixed instead of moving on to the next pair.
    pub strict_pairs: bool,
    /// Measure in the basis `λ'ₖ = U λₖ U†` instead of the standard one.
    pub basis: Option<CMatrix>,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            pair_sequence: vec![(7, 6), (5, 4), (1, 2)],
            fixed_a: 3,
            strict_pairs: false,
            basis: None,
        }
    }
}

impl SchemeConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        Self {
            epsilon,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.pair_sequence.is_empty() {
            return Err(Error::InvalidInput("empty pair sequence".into()));
        }
        let mut used = BTreeSet::from([self.fixed_a]);
        for &(x, y) in &self.pair_sequence {
            for k in [x, y] {
                if !(1..=8).contains(&k) {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        lo: 1,
                        hi: 8,
                    });
                }
                if !used.insert(k) {
                    return Err(Error::InvalidInput(format!(
                        "λ{k} appears more than once among A and the pairs"
                    )));
                }
            }
        }
        if !(1..=8).contains(&self.fixed_a) {
            return Err(Error::IndexOutOfRange {
                index: self.fixed_a,
                lo: 1,
                hi: 8,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeStep {
    pub a: usize,
    pub b: usize,
    pub q: f64,
    pub below: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeTrace {
    pub verdict: Verdict,
    pub epsilon: f64,
    pub steps: Vec<SchemeStep>,
    pub budget: MeasurementBudget,
}

fn observable(config: &SchemeConfig, k: usize) -> Result<crate::su_algebra::HermitianOperator> {
    let op = gellmann(k)?;
    match &config.basis {
        Some(u) => conjugate(&op, u),
        None => Ok(op),
    }
}

/// `min` over pairs of `max(Q(A, B₁), Q(A, B₂))`: the scheme (without
/// `strict_pairs`) reports pure exactly when this is below ε.
pub fn scheme_statistic(rho: &DensityMatrix, config: &SchemeConfig) -> Result<f64> {
    config.validate()?;
    let a = observable(config, config.fixed_a)?;
    let mut stat = f64::INFINITY;
    for &(b1, b2) in &config.pair_sequence {
        let q1 = q_oracle(rho, &a, &observable(config, b1)?)?.q;
        let q2 = q_oracle(rho, &a, &observable(config, b2)?)?.q;
        stat = stat.min(q1.max(q2));
    }
    Ok(stat)
}

/// Runs the scheme on a qutrit state.
pub fn run_qutrit_scheme(rho: &DensityMatrix, config: &SchemeConfig) -> Result<SchemeTrace> {
    config.validate()?;
    if rho.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: rho.dim(),
        });
    }
    let a = observable(config, config.fixed_a)?;
    let mut steps = Vec::new();
    let mut measure = |b: usize| -> Result<bool> {
        let q = q_oracle(rho, &a, &observable(config, b)?)?.q;
        let below = q < config.epsilon;
        steps.push(SchemeStep {
            a: config.fixed_a,
            b,
            q,
            below,
        });
        Ok(below)
    };

    let mut verdict = Verdict::Mixed;
    for &(first, second) in &config.pair_sequence {
        if !measure(first)? {
            continue;
        }
        if measure(second)? {
            verdict = Verdict::Pure;
            break;
        }
        if config.strict_pairs {
            break;
        }
    }

    let pairs: Vec<(usize, usize)> = steps.iter().map(|s| (s.a, s.b)).collect();
    Ok(SchemeTrace {
        verdict,
        epsilon: config.epsilon,
        budget: measurement_budget(&pairs)?,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state_space::{one_param_qutrit, qutrit_density, random};

    fn e8_pure() -> DensityMatrix {
        let mut n = [0.0; 8];
        n[7] = -1.0;
        qutrit_density(&n).unwrap()
    }

    #[test]
    fn pure_at_first_pair() {
        let t = run_qutrit_scheme(&e8_pure(), &SchemeConfig::default()).unwrap();
        assert_eq!(t.verdict, Verdict::Pure);
        assert_eq!(t.steps.len(), 2);
        assert_eq!(t.budget.total, 4);
    }

    #[test]
    fn maximally_mixed_fails_every_pair() {
        let t = run_qutrit_scheme(
            &qutrit_density(&[0.0; 8]).unwrap(),
            &SchemeConfig::default(),
        )
        .unwrap();
        assert_eq!(t.verdict, Verdict::Mixed);
        assert_eq!(t.steps.len(), 3);
        assert!(t.steps.iter().all(|s| (s.q - 4.0 / 9.0).abs() < 1e-12));
        assert_eq!(t.budget.total, 8);
    }

    #[test]
    fn n1_family_is_mixed() {
        let rho = one_param_qutrit(1, 0.5).unwrap().density().unwrap();
        let t = run_qutrit_scheme(&rho, &SchemeConfig::default()).unwrap();
        assert_eq!(t.verdict, Verdict::Mixed);
    }

    #[test]
    fn rejects_qubits_and_bad_configs() {
        let q = crate::state_space::qubit_density([0.0; 3]).unwrap();
        assert!(run_qutrit_scheme(&q, &SchemeConfig::default()).is_err());
        let rho = e8_pure();
        for cfg in [
            SchemeConfig::with_epsilon(0.0),
            SchemeConfig {
                fixed_a: 7,
                ..Default::default()
            },
            SchemeConfig {
                pair_sequence: vec![(7, 7)],
                ..Default::default()
            },
            SchemeConfig {
                pair_sequence: vec![(9, 1)],
                ..Default::default()
            },
        ] {
            assert!(run_qutrit_scheme(&rho, &cfg).is_err());
        }
    }

    #[test]
    fn statistic_agrees_with_verdict() {
        for seed in 0..20 {
            let rho = random::random_density(3, seed).unwrap();
            let cfg = SchemeConfig::default();
            let stat = scheme_statistic(&rho, &cfg).unwrap();
            let t = run_qutrit_scheme(&rho, &cfg).unwrap();
            assert_eq!(t.verdict == Verdict::Pure, stat < cfg.epsilon);
        }
        assert!(scheme_statistic(&e8_pure(), &SchemeConfig::default()).unwrap() < 1e-12);
    }

    #[test]
    fn basis_covariance() {
        for seed in 0..5 {
            let u = random::random_unitary(3, seed).unwrap();
            for rho in [e8_pure(), random::random_density(3, seed).unwrap()] {
                let plain = run_qutrit_scheme(&rho, &SchemeConfig::default()).unwrap();
                let cfg = SchemeConfig {
                    basis: Some(u.clone()),
                    ..Default::default()
                };
                let rotated = run_qutrit_scheme(&rho.conjugated(&u).unwrap(), &cfg).unwrap();
                assert_eq!(plain.verdict, rotated.verdict);
                for (x, y) in plain.steps.iter().zip(&rotated.steps) {
                    assert!((x.q - y.q).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn strict_pairs_stops_on_split() {
        let rho = random::random_density(3, 4).unwrap();
        let q = |b: usize| {
            q_oracle(&rho, &gellmann(3).unwrap(), &gellmann(b).unwrap())
                .unwrap()
                .q
        };
        let (q7, q6) = (q(7), q(6));
        // Order the first pair so its first member passes and the second fails.
        let first = if q7 < q6 { (7, 6) } else { (6, 7) };
        let base = SchemeConfig {
            epsilon: (q7 + q6) / 2.0,
            pair_sequence: vec![first, (5, 4), (1, 2)],
            ..Default::default()
        };
        let loose = run_qutrit_scheme(&rho, &base).unwrap();
        let strict = run_qutrit_scheme(
            &rho,
            &SchemeConfig {
                strict_pairs: true,
                ..base.clone()
            },
        )
        .unwrap();
        assert_eq!(strict.steps.len(), 2);
        assert_eq!(strict.verdict, Verdict::Mixed);
        assert!(loose.steps.len() > 2);
    }
}
