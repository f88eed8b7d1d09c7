//! Mixed states that a finite threshold ε misreports as pure.
//!
//! For a family with a scalar parameter and a pure endpoint, the detection
//! statistic is scanned inwards from the pure end until it first reaches ε
//! and the crossing is then bisected. Everything between the pure endpoint
//! and the crossing is a blind spot.

use serde::{Deserialize, Serialize};

use crate::state_space::{
    isotropic, omega3_membership, one_param_qutrit, one_param_range, qubit_density, Membership,
    GEOMETRY_TOL,
};
use crate::su_algebra::{pauli, Axis};
use crate::uncertainty::{q_max_over_settings, q_oracle, MaximizerConfig, SettingTemplate};
use crate::{Error, Result};

use super::scheme::{scheme_statistic, SchemeConfig};

const SCAN_POINTS: usize = 32;
const BISECTION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlindSpotFamily {
    /// Qubit Bloch length `n ∈ [0, 1]` with spins along z and x.
    QubitOrthogonal,
    /// Isotropic two-qutrit `p ∈ [0, 1]`, maximized over the constrained settings.
    Isotropic,
    /// Single-qutrit family along `eᵢ`, judged by the sequential scheme.
    OneParamQutrit { i: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlindSpot {
    pub family: BlindSpotFamily,
    pub epsilon: f64,
    /// Parameter value of the pure state.
    pub pure_endpoint: f64,
    /// Crossing of the statistic with ε; absent when it never reaches ε.
    pub threshold: Option<f64>,
    pub statistic_at_threshold: Option<f64>,
    /// Parameter interval (ordered) of states reported pure.
    pub interval: (f64, f64),
    /// Every state of the family is reported pure.
    pub full_range: bool,
    /// Closed-form threshold as printed, for comparison.
    pub printed_threshold: Option<f64>,
}

struct Family<'a> {
    range: (f64, f64),
    pure: f64,
    statistic: Box<dyn Fn(f64) -> Result<f64> + 'a>,
    printed: Option<f64>,
}

fn family<'a>(
    f: BlindSpotFamily,
    epsilon: f64,
    maximizer: &'a MaximizerConfig,
) -> Result<Family<'a>> {
    let printed_sqrt = |x: f64| (x >= 0.0).then(|| x.sqrt());
    Ok(match f {
        BlindSpotFamily::QubitOrthogonal => Family {
            range: (0.0, 1.0),
            pure: 1.0,
            statistic: Box::new(|n| {
                let rho = qubit_density([0.0, 0.0, n.min(1.0)])?;
                Ok(q_oracle(&rho, &pauli(Axis::Z), &pauli(Axis::X))?.q)
            }),
            printed: printed_sqrt(1.0 - 2.0 * epsilon / 3.0),
        },
        BlindSpotFamily::Isotropic => Family {
            range: (0.0, 1.0),
            pure: 1.0,
            statistic: Box::new(move |p| {
                let rho = isotropic(p.clamp(0.0, 1.0))?;
                Ok(
                    q_max_over_settings(&rho, &SettingTemplate::two_qutrit_default(), maximizer)?
                        .q_max,
                )
            }),
            printed: printed_sqrt(1.0 - 1.5 * epsilon),
        },
        BlindSpotFamily::OneParamQutrit { i } => {
            let (lo, hi) = one_param_range(i)?;
            let extremal = |v: f64| {
                let mut n = [0.0; 8];
                n[i - 1] = v;
                omega3_membership(&n, GEOMETRY_TOL) == Membership::Extremal
            };
            let pure = if extremal(lo) {
                lo
            } else if extremal(hi) {
                hi
            } else {
                return Err(Error::InvalidInput(format!(
                    "one-parameter family along e{i} has no pure state"
                )));
            };
            Family {
                range: (lo, hi),
                pure,
                statistic: Box::new(move |v| {
                    let rho = one_param_qutrit(i, v.clamp(lo, hi))?.density()?;
                    scheme_statistic(&rho, &SchemeConfig::default())
                }),
                printed: None,
            }
        }
    })
}

/// Blind spot with the default maximizer.
pub fn blind_spot(family: BlindSpotFamily, epsilon: f64) -> Result<BlindSpot> {
    blind_spot_with(family, epsilon, &MaximizerConfig::default())
}

pub fn blind_spot_with(
    which: BlindSpotFamily,
    epsilon: f64,
    maximizer: &MaximizerConfig,
) -> Result<BlindSpot> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let fam = family(which, epsilon, maximizer)?;
    let far = if fam.pure == fam.range.0 {
        fam.range.1
    } else {
        fam.range.0
    };
    let at = |k: usize| fam.pure + (far - fam.pure) * k as f64 / SCAN_POINTS as f64;
    let ordered = |x: f64, y: f64| (x.min(y), x.max(y));

    let crossing = (1..=SCAN_POINTS)
        .map(|k| Ok((k, (fam.statistic)(at(k))?)))
        .find(|r: &Result<(usize, f64)>| r.as_ref().map_or(true, |(_, s)| *s >= epsilon))
        .transpose()?;
    let Some((k, _)) = crossing else {
        return Ok(BlindSpot {
            family: which,
            epsilon,
            pure_endpoint: fam.pure,
            threshold: None,
            statistic_at_threshold: None,
            interval: ordered(fam.pure, far),
            full_range: true,
            printed_threshold: fam.printed,
        });
    };

    // `inside` stays below ε, `outside` at or above.
    let (mut inside, mut outside) = (at(k - 1), at(k));
    while (outside - inside).abs() > BISECTION_TOL {
        let mid = 0.5 * (inside + outside);
        if (fam.statistic)(mid)? < epsilon {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    let threshold = 0.5 * (inside + outside);
    Ok(BlindSpot {
        family: which,
        epsilon,
        pure_endpoint: fam.pure,
        threshold: Some(threshold),
        statistic_at_threshold: Some((fam.statistic)(threshold)?),
        interval: ordered(fam.pure, threshold),
        full_range: false,
        printed_threshold: fam.printed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_threshold_is_root_of_linear_entropy() {
        for eps in [1e-2, 1e-4] {
            let b = blind_spot(BlindSpotFamily::QubitOrthogonal, eps).unwrap();
            let t = b.threshold.unwrap();
            assert!((t - (1.0 - eps).sqrt()).abs() < 1e-9);
            assert!((b.statistic_at_threshold.unwrap() - eps).abs() < 1e-8);
            assert_eq!(b.interval, (t, 1.0));
            assert!((b.printed_threshold.unwrap() - (1.0 - 2.0 * eps / 3.0).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn n8_family_full_range_for_large_epsilon() {
        let b = blind_spot(BlindSpotFamily::OneParamQutrit { i: 8 }, 0.6).unwrap();
        assert!(b.full_range);
        assert_eq!(b.interval, (-1.0, 0.5));
        let b = blind_spot(BlindSpotFamily::OneParamQutrit { i: 8 }, 1e-3).unwrap();
        assert!(!b.full_range);
        assert!(b.threshold.unwrap() > -1.0);
    }

    #[test]
    fn family_without_pure_state_rejected() {
        assert!(blind_spot(BlindSpotFamily::OneParamQutrit { i: 1 }, 1e-3).is_err());
        assert!(blind_spot(BlindSpotFamily::QubitOrthogonal, 0.0).is_err());
    }
}
