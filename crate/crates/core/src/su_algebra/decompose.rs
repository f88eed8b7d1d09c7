use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{gellmann_basis, pauli_basis, CMatrix, HermitianOperator};
use crate::{Error, Result};

/// Coefficients at or below this magnitude are treated as absent.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Local operator basis `{I, B₁, …}` with `tr(BᵢBⱼ) = 2δᵢⱼ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorBasis {
    /// `{I, σx, σy, σz}` on a qubit.
    Pauli,
    /// `{I, λ₁, …, λ₈}` on a qutrit.
    GellMann,
}

impl OperatorBasis {
    pub fn local_dim(self) -> usize {
        match self {
            OperatorBasis::Pauli => 2,
            OperatorBasis::GellMann => 3,
        }
    }

    /// Number of elements including the identity.
    pub fn element_count(self) -> usize {
        let d = self.local_dim();
        d * d
    }

    fn element(self, idx: usize) -> CMatrix {
        let d = self.local_dim();
        if idx == 0 {
            return CMatrix::identity(d, d);
        }
        match self {
            OperatorBasis::Pauli => pauli_basis()[idx - 1].matrix().clone(),
            OperatorBasis::GellMann => gellmann_basis()[idx - 1].matrix().clone(),
        }
    }

    fn norm(self, idx: usize) -> f64 {
        if idx == 0 {
            self.local_dim() as f64
        } else {
            2.0
        }
    }
}

/// Expansion `op = c₀ I + Σ cₖ Bₖ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub basis: OperatorBasis,
    /// `coefficients[0]` multiplies the identity, `coefficients[k]` multiplies `Bₖ`.
    pub coefficients: Vec<f64>,
    /// Largest entrywise reconstruction error.
    pub residual: f64,
}

impl Decomposition {
    /// Non-identity basis labels with a nonzero coefficient.
    pub fn support(&self) -> BTreeSet<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| c.abs() > SUPPORT_TOL)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn reconstruct(&self) -> HermitianOperator {
        let d = self.basis.local_dim();
        let mut m = CMatrix::zeros(d, d);
        for (k, c) in self.coefficients.iter().enumerate() {
            m += self.basis.element(k).scale(*c);
        }
        HermitianOperator::from_hermitian(m)
    }
}

fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    // tr(AB) = Σᵢⱼ Aᵢⱼ Bⱼᵢ
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Decomposes a single-party operator over `basis`.
pub fn decompose_in(op: &HermitianOperator, basis: OperatorBasis) -> Result<Decomposition> {
    if op.dim() != basis.local_dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.local_dim(),
            found: op.dim(),
        });
    }
    let coefficients: Vec<f64> = (0..basis.element_count())
        .map(|k| trace_product(op.matrix(), &basis.element(k)).re / basis.norm(k))
        .collect();
    let mut d = Decomposition {
        basis,
        coefficients,
        residual: 0.0,
    };
    d.residual = max_abs(&(op.matrix() - d.reconstruct().matrix()));
    Ok(d)
}

/// Decomposes a 3×3 Hermitian operator over `{I, λ₁, …, λ₈}`:
/// `c₀ = tr(op)/3`, `cₖ = tr(op λₖ)/2`.
pub fn decompose(op: &HermitianOperator) -> Result<Decomposition> {
    decompose_in(op, OperatorBasis::GellMann)
}

/// Expansion of a two-party operator over `{Bₐ ⊗ B_b}` (index 0 is the identity).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartiteDecomposition {
    pub basis: OperatorBasis,
    /// `coefficients[a][b]` multiplies `Bₐ ⊗ B_b`.
    pub coefficients: Vec<Vec<f64>>,
    pub residual: f64,
}

impl BipartiteDecomposition {
    /// Labels `(a, b) ≠ (0, 0)` with a nonzero coefficient.
    pub fn support(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for (a, row) in self.coefficients.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if (a, b) != (0, 0) && c.abs() > SUPPORT_TOL {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    /// Support restricted to correlators, where neither factor is the identity.
    pub fn correlators(&self) -> BTreeSet<(usize, usize)> {
        self.support()
            .into_iter()
            .filter(|&(a, b)| a != 0 && b != 0)
            .collect()
    }
}

/// Decomposes an operator on `d ⊗ d` over product basis elements.
pub fn decompose_bipartite(
    op: &HermitianOperator,
    basis: OperatorBasis,
) -> Result<BipartiteDecomposition> {
    let d = basis.local_dim();
    if op.dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: op.dim(),
        });
    }
    let n = basis.element_count();
    let elements: Vec<CMatrix> = (0..n).map(|k| basis.element(k)).collect();
    let mut coefficients = vec![vec![0.0; n]; n];
    let mut rebuilt = CMatrix::zeros(d * d, d * d);
    for a in 0..n {
        for b in 0..n {
            let prod = elements[a].kronecker(&elements[b]);
            let c = trace_product(op.matrix(), &prod).re / (basis.norm(a) * basis.norm(b));
            coefficients[a][b] = c;
            if c != 0.0 {
                rebuilt += prod.scale(c);
            }
        }
    }
    Ok(BipartiteDecomposition {
        basis,
        coefficients,
        residual: max_abs(&(op.matrix() - rebuilt)),
    })
}
