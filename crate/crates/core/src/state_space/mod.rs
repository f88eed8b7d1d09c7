//! Density matrices, Bloch parametrizations and the state families used by
//! the detection schemes.

mod families;
pub mod random;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::su_algebra::{
    gellmann_basis, gellmann_dot, pauli_basis, pauli_dot, star, CMatrix, HermitianOperator,
};
use crate::{Error, Result};

pub use families::{
    admissible_scale, one_param_qutrit, one_param_range, param_qutrit, three_param_qutrit,
    two_param_qutrit,
};

/// Minimum eigenvalue accepted for a density matrix.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Allowed deviation of `tr ρ` from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Default tolerance for Bloch-space geometry tests.
pub const GEOMETRY_TOL: f64 = 1e-10;

fn dot<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Single-qubit Bloch vector, `|n| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitBloch([f64; 3]);

impl QubitBloch {
    pub fn new(n: [f64; 3]) -> Result<Self> {
        if n.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite Bloch component".into()));
        }
        let nn = dot(&n, &n);
        if nn > 1.0 + GEOMETRY_TOL {
            // eigenvalues of (I + n·σ)/2 are (1 ± |n|)/2
            return Err(Error::Positivity {
                min_eigenvalue: (1.0 - nn.sqrt()) / 2.0,
            });
        }
        Ok(Self(n))
    }

    pub fn components(&self) -> &[f64; 3] {
        &self.0
    }

    pub fn density(&self) -> DensityMatrix {
        let half = HermitianOperator::identity(2).scaled(0.5);
        DensityMatrix {
            op: &half + &pauli_dot(&self.0).scaled(0.5),
        }
    }
}

/// Single-qutrit Bloch vector inside Ω₃.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QutritBloch([f64; 8]);

impl QutritBloch {
    /// Accepts `n` with `n·n ≤ 1` and `3 n·n − 2 (n*n)·n ≤ 1` (within `1e-10`).
    pub fn new(n: [f64; 8]) -> Result<Self> {
        if n.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite Bloch component".into()));
        }
        if omega3_membership(&n, GEOMETRY_TOL) == Membership::Outside {
            let min_eigenvalue = qutrit_operator(&n).min_eigenvalue();
            return Err(Error::Positivity { min_eigenvalue });
        }
        Ok(Self(n))
    }

    pub fn components(&self) -> &[f64; 8] {
        &self.0
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        qutrit_density(&self.0)
    }

    pub fn membership(&self) -> Membership {
        omega3_membership(&self.0, GEOMETRY_TOL)
    }
}

/// Bloch coefficients of a qubit (`nᵢ = tr ρσᵢ`) or qutrit (`nᵢ = (√3/2) tr ρλᵢ`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dim_tag", content = "components", rename_all = "lowercase")]
pub enum BlochVector {
    Qubit([f64; 3]),
    Qutrit([f64; 8]),
}

impl BlochVector {
    pub fn components(&self) -> &[f64] {
        match self {
            BlochVector::Qubit(n) => n,
            BlochVector::Qutrit(n) => n,
        }
    }
}

/// Unit-trace positive semidefinite Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    /// Validates trace (within `1e-10`) and positivity (min eigenvalue ≥ `−1e-10`).
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let min_eigenvalue = op.min_eigenvalue();
        if min_eigenvalue.is_nan() {
            return Err(Error::Numerical("eigenvalue computation failed".into()));
        }
        if min_eigenvalue < -POSITIVITY_TOL {
            return Err(Error::Positivity { min_eigenvalue });
        }
        Ok(Self { op })
    }

    /// Projector `|ψ⟩⟨ψ|` onto a normalized copy of `ket`.
    pub fn from_ket(ket: &DVector<Complex64>) -> Result<Self> {
        let norm = ket.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidInput(
                "ket has zero or non-finite norm".into(),
            ));
        }
        let psi = ket.unscale(norm);
        let m = &psi * psi.adjoint();
        Ok(Self {
            op: HermitianOperator::from_hermitian(m),
        })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    /// `p·self + (1−p)·other`.
    pub fn mix(&self, other: &Self, p: f64) -> Result<Self> {
        self.op.check_dim(&other.op)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::FamilyOutOfRange {
                family: "mixture".into(),
                detail: format!("p = {p} outside [0, 1]"),
            });
        }
        let m = self.op.matrix().scale(p) + other.op.matrix().scale(1.0 - p);
        Ok(Self {
            op: HermitianOperator::from_hermitian(m),
        })
    }

    /// `u ρ u†`.
    pub fn conjugated(&self, u: &CMatrix) -> Result<Self> {
        Ok(Self {
            op: crate::su_algebra::conjugate(&self.op, u)?,
        })
    }
}

fn qutrit_operator(n: &[f64; 8]) -> HermitianOperator {
    let third = HermitianOperator::identity(3).scaled(1.0 / 3.0);
    &third + &gellmann_dot(n).scaled(3f64.sqrt() / 3.0)
}

/// `(I + n·σ)/2`.
pub fn qubit_density(n: [f64; 3]) -> Result<DensityMatrix> {
    Ok(QubitBloch::new(n)?.density())
}

/// `(I + √3 n·λ)/3`, rejected when its smallest eigenvalue is below `−1e-10`.
pub fn qutrit_density(n: &[f64; 8]) -> Result<DensityMatrix> {
    if n.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite Bloch component".into()));
    }
    DensityMatrix::new(qutrit_operator(n))
}

/// Inverse of [`qubit_density`] / [`qutrit_density`].
pub fn bloch_of(rho: &DensityMatrix) -> Result<BlochVector> {
    let expect = |op: &HermitianOperator| (rho.matrix() * op.matrix()).trace().re;
    match rho.dim() {
        2 => Ok(BlochVector::Qubit(pauli_basis().each_ref().map(expect))),
        3 => {
            let s = 3f64.sqrt() / 2.0;
            Ok(BlochVector::Qutrit(
                gellmann_basis().each_ref().map(|l| s * expect(l)),
            ))
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// `tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

/// `1 − tr ρ² < tol`.
pub fn is_pure(rho: &DensityMatrix, tol: f64) -> bool {
    1.0 - purity(rho) < tol
}

/// `(d/(d−1))(1 − tr ρ²)` with `d` the full Hilbert-space dimension.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    let d = rho.dim() as f64;
    // Clamped: rounding can push tr(ρ²) a few ulps above 1 for pure states.
    (d / (d - 1.0) * (1.0 - purity(rho))).max(0.0)
}

/// Position of a qutrit Bloch vector relative to Ω₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Interior,
    Boundary,
    Extremal,
    Outside,
}

/// Classifies `n` against `Ω₃ = {n·n ≤ 1, 3 n·n − 2 (n*n)·n ≤ 1}`.
///
/// Extremal points (`n·n = 1`, `n*n = n`) are pure states; they also lie on
/// the boundary, and the most specific label is returned.
pub fn omega3_membership(n: &[f64; 8], tol: f64) -> Membership {
    let nn = dot(n, n);
    let nstar = star(n, n);
    let cubic = 3.0 * nn - 2.0 * dot(&nstar, n);
    if nn > 1.0 + tol || cubic > 1.0 + tol {
        return Membership::Outside;
    }
    let star_gap = nstar
        .iter()
        .zip(n)
        .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
    if (nn - 1.0).abs() < tol && star_gap < tol {
        Membership::Extremal
    } else if (cubic - 1.0).abs() < tol {
        Membership::Boundary
    } else {
        Membership::Interior
    }
}

/// Real nonnegative Schmidt coefficients with `Σ kᵢ² = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SchmidtCoeffs(Vec<f64>);

impl SchmidtCoeffs {
    pub fn new(k: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&k.len()) {
            return Err(Error::InvalidInput(format!(
                "expected 2 or 3 Schmidt coefficients, got {}",
                k.len()
            )));
        }
        if k.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidInput(
                "Schmidt coefficients must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = k.iter().map(|x| x * x).sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::Unnormalized(sum));
        }
        Ok(Self(k))
    }

    /// Divides by the Euclidean norm first.
    pub fn normalized(k: Vec<f64>) -> Result<Self> {
        let norm = k.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::Unnormalized(0.0));
        }
        Self::new(k.into_iter().map(|x| x / norm).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Local dimension `d` (2 or 3).
    pub fn local_dim(&self) -> usize {
        self.0.len()
    }

    /// `Σ kᵢ |ii⟩` in the `d²`-dimensional product space.
    pub fn ket(&self) -> DVector<Complex64> {
        let d = self.local_dim();
        let mut v = DVector::zeros(d * d);
        for (i, k) in self.0.iter().enumerate() {
            v[i * d + i] = Complex64::new(*k, 0.0);
        }
        v
    }
}

impl TryFrom<Vec<f64>> for SchmidtCoeffs {
    type Error = Error;

    fn try_from(k: Vec<f64>) -> Result<Self> {
        Self::new(k)
    }
}

impl From<SchmidtCoeffs> for Vec<f64> {
    fn from(k: SchmidtCoeffs) -> Self {
        k.0
    }
}

/// Projector onto `Σ kᵢ |ii⟩`.
pub fn schmidt_pure(k: &SchmidtCoeffs) -> DensityMatrix {
    DensityMatrix::from_ket(&k.ket()).expect("Schmidt ket is normalized")
}

/// Parameters of `p|ψ₁⟩⟨ψ₁| + (1−p)|ψ₂⟩⟨ψ₂|` with Schmidt-form `ψ₁, ψ₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureParam {
    pub p: f64,
    pub psi1: SchmidtCoeffs,
    pub psi2: SchmidtCoeffs,
}

impl MixtureParam {
    pub fn new(p: f64, psi1: SchmidtCoeffs, psi2: SchmidtCoeffs) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::FamilyOutOfRange {
                family: "mixture".into(),
                detail: format!("p = {p} outside [0, 1]"),
            });
        }
        if psi1.local_dim() != psi2.local_dim() {
            return Err(Error::DimensionMismatch {
                expected: psi1.local_dim(),
                found: psi2.local_dim(),
            });
        }
        Ok(Self { p, psi1, psi2 })
    }
}

pub fn mixture(m: &MixtureParam) -> Result<DensityMatrix> {
    schmidt_pure(&m.psi1).mix(&schmidt_pure(&m.psi2), m.p)
}

/// `p|φ⟩⟨φ| + ((1−p)/9) I⊗I` with `|φ⟩ = (|11⟩+|22⟩+|33⟩)/√3`.
pub fn isotropic(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::FamilyOutOfRange {
            family: "isotropic".into(),
            detail: format!("p = {p} outside [0, 1]"),
        });
    }
    let phi = SchmidtCoeffs(vec![1.0 / 3f64.sqrt(); 3]);
    let noise = DensityMatrix {
        op: HermitianOperator::identity(9).scaled(1.0 / 9.0),
    };
    schmidt_pure(&phi).mix(&noise, p)
}

/// Two-qubit singlet `(|01⟩ − |10⟩)/√2` as a density matrix.
pub fn singlet() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ket = DVector::from_vec(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(-s, 0.0),
        Complex64::new(0.0, 0.0),
    ]);
    DensityMatrix::from_ket(&ket).expect("singlet is normalized")
}

/// `((1−p)/4) I + p ρ_singlet`, positive for `p ∈ [−1/3, 1]`.
pub fn werner_qubit(p: f64) -> Result<DensityMatrix> {
    if !p.is_finite() {
        return Err(Error::InvalidInput("non-finite Werner parameter".into()));
    }
    let m = CMatrix::identity(4, 4).scale((1.0 - p) / 4.0) + singlet().matrix().scale(p);
    DensityMatrix::new(HermitianOperator::from_hermitian(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn e8(k: usize, v: f64) -> [f64; 8] {
        let mut n = [0.0; 8];
        n[k - 1] = v;
        n
    }

    #[test]
    fn qubit_examples() {
        let mixed = qubit_density([0.0; 3]).unwrap();
        assert!(
            mixed
                .operator()
                .max_abs_diff(&HermitianOperator::identity(2).scaled(0.5))
                < 1e-15
        );
        let up = qubit_density([0.0, 0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(up.matrix()[(0, 0)].re, 1.0);
        assert_abs_diff_eq!(up.matrix()[(1, 1)].re, 0.0);
        assert_abs_diff_eq!(purity(&up), 1.0, epsilon = 1e-15);
        let n = [0.6, 0.0, 0.8];
        assert_abs_diff_eq!(purity(&qubit_density(n).unwrap()), 1.0, epsilon = 1e-12);
        assert!(matches!(
            qubit_density([0.0, 0.8, 0.8]),
            Err(Error::Positivity { .. })
        ));
    }

    #[test]
    fn qubit_linear_entropy() {
        let n = [0.1, -0.4, 0.3];
        let s = linear_entropy(&qubit_density(n).unwrap());
        assert_abs_diff_eq!(s, 1.0 - dot(&n, &n), epsilon = 1e-12);
    }

    #[test]
    fn qutrit_examples() {
        let mixed = qutrit_density(&[0.0; 8]).unwrap();
        assert_abs_diff_eq!(purity(&mixed), 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(linear_entropy(&mixed), 1.0, epsilon = 1e-12);

        let pure = qutrit_density(&e8(8, -1.0)).unwrap();
        for (i, v) in [0.0, 0.0, 1.0].into_iter().enumerate() {
            assert_abs_diff_eq!(pure.matrix()[(i, i)].re, v, epsilon = 1e-12);
        }
        assert!(is_pure(&pure, 1e-10));
        assert_abs_diff_eq!(linear_entropy(&pure), 0.0, epsilon = 1e-12);

        match qutrit_density(&e8(8, 1.0)) {
            Err(Error::Positivity { min_eigenvalue }) => {
                assert_abs_diff_eq!(min_eigenvalue, -1.0 / 3.0, epsilon = 1e-12)
            }
            other => panic!("expected positivity error, got {other:?}"),
        }
    }

    #[test]
    fn bloch_inverse() {
        let rho = qutrit_density(&e8(8, -1.0)).unwrap();
        let BlochVector::Qutrit(n) = bloch_of(&rho).unwrap() else {
            panic!("expected qutrit")
        };
        for (i, v) in n.iter().enumerate() {
            let expect = if i == 7 { -1.0 } else { 0.0 };
            assert_abs_diff_eq!(*v, expect, epsilon = 1e-12);
        }
        let zero = bloch_of(&qutrit_density(&[0.0; 8]).unwrap()).unwrap();
        assert!(zero.components().iter().all(|x| x.abs() < 1e-15));
        assert!(matches!(
            bloch_of(&isotropic(0.5).unwrap()),
            Err(Error::UnsupportedDimension(9))
        ));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(omega3_membership(&e8(8, -1.0), 1e-10), Membership::Extremal);
        assert_eq!(omega3_membership(&[0.0; 8], 1e-10), Membership::Interior);
        assert_eq!(omega3_membership(&e8(8, 1.0), 1e-10), Membership::Outside);
        // rank-2 state diag(1/2, 1/2, 0): on the boundary but not pure
        assert_eq!(omega3_membership(&e8(8, 0.5), 1e-10), Membership::Boundary);
        assert!(QutritBloch::new(e8(8, 1.0)).is_err());
    }

    #[test]
    fn schmidt_states() {
        let product = schmidt_pure(&SchmidtCoeffs::new(vec![1.0, 0.0, 0.0]).unwrap());
        assert_abs_diff_eq!(purity(&product), 1.0, epsilon = 1e-12);

        let s = 1.0 / 3f64.sqrt();
        let max_ent = schmidt_pure(&SchmidtCoeffs::new(vec![s, s, s]).unwrap());
        assert!(
            max_ent
                .operator()
                .max_abs_diff(isotropic(1.0).unwrap().operator())
                < 1e-12
        );

        assert!(SchmidtCoeffs::new(vec![0.6, 0.8]).is_ok());
        assert!(matches!(
            SchmidtCoeffs::new(vec![0.6, 0.9]),
            Err(Error::Unnormalized(_))
        ));
        assert!(SchmidtCoeffs::new(vec![-0.6, 0.8]).is_err());
        assert!(SchmidtCoeffs::new(vec![1.0]).is_err());
        assert_eq!(
            schmidt_pure(&SchmidtCoeffs::new(vec![0.6, 0.8]).unwrap()).dim(),
            4
        );
    }

    #[test]
    fn mixture_examples() {
        let a = SchmidtCoeffs::new(vec![1.0, 0.0, 0.0]).unwrap();
        let b = SchmidtCoeffs::new(vec![0.0, 1.0, 0.0]).unwrap();
        let at0 = mixture(&MixtureParam::new(0.0, a.clone(), b.clone()).unwrap()).unwrap();
        assert!(at0.operator().max_abs_diff(schmidt_pure(&b).operator()) < 1e-15);
        let half = mixture(&MixtureParam::new(0.5, a.clone(), b.clone()).unwrap()).unwrap();
        assert_abs_diff_eq!(purity(&half), 0.5, epsilon = 1e-12);
        assert!(matches!(
            MixtureParam::new(1.5, a, b),
            Err(Error::FamilyOutOfRange { .. })
        ));
    }

    #[test]
    fn isotropic_examples() {
        assert!(
            isotropic(0.0)
                .unwrap()
                .operator()
                .max_abs_diff(&HermitianOperator::identity(9).scaled(1.0 / 9.0))
                < 1e-15
        );
        assert_abs_diff_eq!(purity(&isotropic(1.0).unwrap()), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(purity(&isotropic(0.5).unwrap()), 1.0 / 3.0, epsilon = 1e-12);
        assert!(isotropic(-0.1).is_err());
    }

    #[test]
    fn werner_examples() {
        assert!(
            werner_qubit(0.0)
                .unwrap()
                .operator()
                .max_abs_diff(&HermitianOperator::identity(4).scaled(0.25))
                < 1e-15
        );
        assert_abs_diff_eq!(purity(&werner_qubit(1.0).unwrap()), 1.0, epsilon = 1e-12);
        for p in [-1.0 / 3.0, 0.2, 0.7] {
            let w = werner_qubit(p).unwrap();
            assert_abs_diff_eq!(purity(&w), (1.0 + 3.0 * p * p) / 4.0, epsilon = 1e-12);
        }
        assert!(matches!(werner_qubit(-0.5), Err(Error::Positivity { .. })));
        assert!(matches!(werner_qubit(1.2), Err(Error::Positivity { .. })));
    }
}
