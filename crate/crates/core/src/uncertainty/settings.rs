//! Observable setting families.

use serde::{Deserialize, Serialize};

use crate::su_algebra::{gellmann, gellmann_dot, pauli_dot, tensor, HermitianOperator};
use crate::{Error, Result};

const UNIT_TOL: f64 = 1e-10;

/// Gell-Mann index pairs `(i, j)` allowed in two-qutrit settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GellMannPair {
    #[serde(rename = "1,2")]
    P12,
    #[serde(rename = "3,8")]
    P38,
    #[serde(rename = "4,5")]
    P45,
    #[serde(rename = "6,7")]
    P67,
}

impl GellMannPair {
    pub const ALL: [GellMannPair; 4] = [Self::P12, Self::P38, Self::P45, Self::P67];

    pub fn indices(self) -> (usize, usize) {
        match self {
            Self::P12 => (1, 2),
            Self::P38 => (3, 8),
            Self::P45 => (4, 5),
            Self::P67 => (6, 7),
        }
    }

    pub fn from_indices(i: usize, j: usize) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.indices() == (i, j))
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "({i}, {j}) is not one of (1,2), (3,8), (4,5), (6,7)"
                ))
            })
    }

    /// `cos θ λᵢ + sin θ λⱼ`.
    pub fn rotated(self, theta: f64) -> HermitianOperator {
        let (i, j) = self.indices();
        let mut v = [0.0; 8];
        v[i - 1] = theta.cos();
        v[j - 1] = theta.sin();
        gellmann_dot(&v)
    }
}

/// A concrete pair of observables `(A, B)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SettingFamily {
    /// `A = r̂·σ`, `B = t̂·σ`.
    QubitSpins { r: [f64; 3], t: [f64; 3] },
    /// `A = â·λ`, `B = b̂·λ`.
    QutritPair { a: [f64; 8], b: [f64; 8] },
    /// `A = (m̂·σ)⊗(n̂·σ)`, `B = (p̂·σ)⊗(q̂·σ)` with all four directions in
    /// the x–y plane at the given azimuths.
    PlanarTwoQubit {
        phi_m: f64,
        phi_n: f64,
        phi_p: f64,
        phi_q: f64,
    },
    /// `A = λᵢ ⊗ (cos θ₂ λᵢ + sin θ₂ λⱼ)`,
    /// `B = (cos θ₃ λᵢ + sin θ₃ λⱼ) ⊗ (cos θ₄ λᵢ + sin θ₄ λⱼ)`.
    TwoQutrit {
        pair: GellMannPair,
        theta2: f64,
        theta3: f64,
        theta4: f64,
    },
}

fn check_unit(v: &[f64]) -> Result<()> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOL || !norm.is_finite() {
        return Err(Error::NotUnitVector(norm));
    }
    Ok(())
}

fn planar(phi: f64) -> HermitianOperator {
    pauli_dot(&[phi.cos(), phi.sin(), 0.0])
}

impl SettingFamily {
    /// Hilbert-space dimension the observables act on.
    pub fn dim(&self) -> usize {
        match self {
            Self::QubitSpins { .. } => 2,
            Self::QutritPair { .. } => 3,
            Self::PlanarTwoQubit { .. } => 4,
            Self::TwoQutrit { .. } => 9,
        }
    }

    pub fn observables(&self) -> Result<(HermitianOperator, HermitianOperator)> {
        match self {
            Self::QubitSpins { r, t } => {
                check_unit(r)?;
                check_unit(t)?;
                Ok((pauli_dot(r), pauli_dot(t)))
            }
            Self::QutritPair { a, b } => {
                check_unit(a)?;
                check_unit(b)?;
                Ok((gellmann_dot(a), gellmann_dot(b)))
            }
            Self::PlanarTwoQubit {
                phi_m,
                phi_n,
                phi_p,
                phi_q,
            } => Ok((
                tensor(&planar(*phi_m), &planar(*phi_n)),
                tensor(&planar(*phi_p), &planar(*phi_q)),
            )),
            Self::TwoQutrit {
                pair,
                theta2,
                theta3,
                theta4,
            } => {
                let (i, _) = pair.indices();
                let li = gellmann(i)?;
                Ok((
                    tensor(&li, &pair.rotated(*theta2)),
                    tensor(&pair.rotated(*theta3), &pair.rotated(*theta4)),
                ))
            }
        }
    }
}
