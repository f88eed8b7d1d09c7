//! Randomized invariant audit over seeded states and observables.

use serde::{Deserialize, Serialize};

use crate::state_space::{bloch_of, qubit_density, qutrit_density, random, BlochVector};
use crate::su_algebra::conjugate;
use crate::uncertainty::q_oracle;
use crate::{Error, Result};

const DIMS: [usize; 4] = [2, 3, 4, 9];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Sample index of the first failure, for reproduction.
    pub first_failure: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub count: usize,
    pub seed: u64,
    pub checks: Vec<AuditCheck>,
}

impl AuditSummary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }
}

fn record(check: &mut AuditCheck, sample: usize, ok: bool) {
    if ok {
        check.passed += 1;
    } else {
        check.failed += 1;
        check.first_failure.get_or_insert(sample);
    }
}

/// Runs `count` samples of each invariant; sample `k` cycles through
/// dimensions 2, 3, 4, 9.
///
/// - `gur_nonnegative`: `Q ≥ −1e-10` for a random state and observables.
/// - `breakdown`: the report fields recombine to `Q` within 1e-12.
/// - `unitary_covariance`: conjugating state and observables by the same
///   random unitary leaves `Q` unchanged within 1e-10.
/// - `bloch_round_trip`: qubit and qutrit states survive Bloch vector round
///   trips within 1e-12.
pub fn run_audit(count: usize, seed: u64) -> Result<AuditSummary> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let mut rng = random::rng(seed);
    let mut checks: Vec<AuditCheck> = [
        "gur_nonnegative",
        "breakdown",
        "unitary_covariance",
        "bloch_round_trip",
    ]
    .iter()
    .map(|name| AuditCheck {
        name: name.to_string(),
        passed: 0,
        failed: 0,
        first_failure: None,
    })
    .collect();

    for k in 0..count {
        let dim = DIMS[k % DIMS.len()];
        let rho = random::density_with(dim, &mut rng);
        let a = random::hermitian_with(dim, &mut rng);
        let b = random::hermitian_with(dim, &mut rng);
        let u = random::unitary_with(dim, &mut rng);

        let r = q_oracle(&rho, &a, &b)?;
        record(&mut checks[0], k, r.q >= -1e-10);
        let recombined = r.var_a * r.var_b - r.commutator_term - r.anticommutator_term;
        record(&mut checks[1], k, (recombined - r.q).abs() <= 1e-12);

        let r2 = q_oracle(
            &rho.conjugated(&u)?,
            &conjugate(&a, &u)?,
            &conjugate(&b, &u)?,
        )?;
        record(&mut checks[2], k, (r2.q - r.q).abs() <= 1e-10);

        let small = random::density_with(2 + k % 2, &mut rng);
        let rebuilt = match bloch_of(&small)? {
            BlochVector::Qubit(n) => qubit_density(n)?,
            BlochVector::Qutrit(n) => qutrit_density(&n)?,
        };
        record(
            &mut checks[3],
            k,
            rebuilt.operator().max_abs_diff(small.operator()) <= 1e-12,
        );
    }
    Ok(AuditSummary {
        count,
        seed,
        checks,
    })
}
