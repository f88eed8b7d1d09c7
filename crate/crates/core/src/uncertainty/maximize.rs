//! Deterministic maximization of `Q` over the free angles of a setting family.
//!
//! A uniform product grid `k·2π/grid` is scanned first (strict `>` so the
//! lowest grid index wins ties), then each angle is refined in turn by
//! golden-section search within one grid step of the incumbent.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::q_oracle;
use super::settings::{GellMannPair, SettingFamily};
use crate::state_space::DensityMatrix;
use crate::{Error, Result};

const GOLDEN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximizerConfig {
    /// Grid points per angle on `[0, 2π)`. At least 8.
    pub grid: usize,
    /// Coordinate-wise golden-section passes after the grid scan.
    pub refine_rounds: usize,
}

impl Default for MaximizerConfig {
    fn default() -> Self {
        Self {
            grid: 32,
            refine_rounds: 3,
        }
    }
}

/// Which setting family to search and which angles are free.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SettingTemplate {
    /// All four azimuths free.
    PlanarTwoQubit,
    /// With `constrained`, `θ₂ = θ₃ + θ₄` and the free angles are `(θ₃, θ₄)`;
    /// otherwise `(θ₂, θ₃, θ₄)`. `θ₃` stays `exclusion` away from 0 and π,
    /// where `B` degenerates towards `±A` and `Q` vanishes for every state.
    TwoQutrit {
        pair: GellMannPair,
        constrained: bool,
        exclusion: f64,
    },
}

impl SettingTemplate {
    /// The two-qutrit template used for classification: pair (1,2),
    /// constrained, 1e-3 exclusion.
    pub fn two_qutrit_default() -> Self {
        Self::TwoQutrit {
            pair: GellMannPair::P12,
            constrained: true,
            exclusion: 1e-3,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::PlanarTwoQubit => 4,
            Self::TwoQutrit { .. } => 9,
        }
    }

    fn domains(&self) -> Vec<AngleDomain> {
        match *self {
            Self::PlanarTwoQubit => vec![AngleDomain::Periodic; 4],
            Self::TwoQutrit {
                constrained,
                exclusion,
                ..
            } => {
                let t3 = AngleDomain::AvoidAxis(exclusion);
                if constrained {
                    vec![t3, AngleDomain::Periodic]
                } else {
                    vec![AngleDomain::Periodic, t3, AngleDomain::Periodic]
                }
            }
        }
    }

    /// The concrete setting at the given free angles.
    pub fn instantiate(&self, angles: &[f64]) -> SettingFamily {
        match *self {
            Self::PlanarTwoQubit => SettingFamily::PlanarTwoQubit {
                phi_m: angles[0],
                phi_n: angles[1],
                phi_p: angles[2],
                phi_q: angles[3],
            },
            Self::TwoQutrit {
                pair, constrained, ..
            } => {
                let (theta2, theta3, theta4) = if constrained {
                    (angles[0] + angles[1], angles[0], angles[1])
                } else {
                    (angles[0], angles[1], angles[2])
                };
                SettingFamily::TwoQutrit {
                    pair,
                    theta2,
                    theta3,
                    theta4,
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum AngleDomain {
    Periodic,
    /// `[0, 2π)` minus open windows of this radius around 0, π and 2π.
    AvoidAxis(f64),
}

impl AngleDomain {
    fn allows(self, x: f64) -> bool {
        match self {
            Self::Periodic => true,
            Self::AvoidAxis(r) => [0.0, PI, TAU].iter().all(|c| (x - c).abs() >= r),
        }
    }

    /// Clamps `[lo, hi]` (which contains `x`) to the allowed segment holding `x`.
    fn clamp(self, x: f64, lo: f64, hi: f64) -> (f64, f64) {
        match self {
            Self::Periodic => (lo, hi),
            Self::AvoidAxis(r) => {
                let (seg_lo, seg_hi) = if x < PI {
                    (r, PI - r)
                } else {
                    (PI + r, TAU - r)
                };
                (lo.max(seg_lo), hi.min(seg_hi))
            }
        }
    }
}

/// Result of [`q_max_over_settings`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingMaximum {
    pub q_max: f64,
    pub argmax: SettingFamily,
    /// Free angles at the maximum, in template order.
    pub angles: Vec<f64>,
}

fn nan_low(q: f64) -> f64 {
    if q.is_nan() {
        f64::NEG_INFINITY
    } else {
        q
    }
}

/// Maximizes `f` on `[lo, hi]` by golden-section search.
fn golden_section(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > GOLDEN_TOL {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Largest `Q(A, B, ρ)` over the free angles of `template`.
pub fn q_max_over_settings(
    rho: &DensityMatrix,
    template: &SettingTemplate,
    config: &MaximizerConfig,
) -> Result<SettingMaximum> {
    if config.grid < 8 {
        return Err(Error::InvalidInput(format!(
            "grid must be at least 8, got {}",
            config.grid
        )));
    }
    if rho.dim() != template.dim() {
        return Err(Error::DimensionMismatch {
            expected: template.dim(),
            found: rho.dim(),
        });
    }
    let domains = template.domains();
    let step = TAU / config.grid as f64;
    let axes: Vec<Vec<f64>> = domains
        .iter()
        .map(|d| {
            (0..config.grid)
                .map(|k| k as f64 * step)
                .filter(|x| d.allows(*x))
                .collect()
        })
        .collect();
    if axes.iter().any(Vec::is_empty) {
        return Err(Error::EmptyGrid("setting angles".into()));
    }

    let mut error = None;
    let mut eval = |angles: &[f64]| -> f64 {
        let setting = template.instantiate(angles);
        match setting
            .observables()
            .and_then(|(a, b)| q_oracle(rho, &a, &b))
        {
            Ok(r) => nan_low(r.q),
            Err(e) => {
                error.get_or_insert(e);
                f64::NEG_INFINITY
            }
        }
    };

    // Grid scan in lexicographic index order.
    let mut idx = vec![0usize; axes.len()];
    let mut best_angles: Vec<f64> = axes.iter().map(|a| a[0]).collect();
    let mut best_q = f64::NEG_INFINITY;
    let mut point = best_angles.clone();
    loop {
        for (k, &i) in idx.iter().enumerate() {
            point[k] = axes[k][i];
        }
        let q = eval(&point);
        if q > best_q {
            best_q = q;
            best_angles.copy_from_slice(&point);
        }
        // Odometer increment, last angle fastest.
        let mut k = axes.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                break;
            }
            idx[k] = 0;
        }
        if idx.iter().all(|&i| i == 0) {
            break;
        }
    }

    for _ in 0..config.refine_rounds {
        for k in 0..domains.len() {
            let x = best_angles[k];
            let (lo, hi) = domains[k].clamp(x, x - step, x + step);
            if hi <= lo {
                continue;
            }
            let mut trial = best_angles.clone();
            let (xk, qk) = golden_section(
                |v| {
                    trial[k] = v;
                    eval(&trial)
                },
                lo,
                hi,
            );
            if qk > best_q {
                best_q = qk;
                best_angles[k] = xk;
            }
        }
    }

    if let Some(e) = error {
        return Err(e);
    }
    if !best_q.is_finite() {
        return Err(Error::Numerical("no finite Q on the setting grid".into()));
    }
    Ok(SettingMaximum {
        q_max: best_q,
        argmax: template.instantiate(&best_angles),
        angles: best_angles,
    })
}
