//! Operator bases and SU(3) vector algebra.
//!
//! Everything downstream is expressed in terms of three operator sets: the
//! Pauli matrices for qubits, the Gell-Mann matrices `λ₁..λ₈` for qutrits and
//! the spin-1 matrices. Products of basis elements are resolved through the
//! structure constants (`λⱼλₖ = (2/3)δⱼₖ I + (d_jkl + i f_jkl) λₗ`), which are
//! computed once from trace formulas rather than tabulated.

mod decompose;
mod structure;

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use decompose::{
    decompose, decompose_bipartite, decompose_in, BipartiteDecomposition, Decomposition,
    OperatorBasis,
};
pub use structure::{star, structure_constants, wedge, StructureConstants};

/// Dense complex matrix used for operators, kets and unitaries.
pub type CMatrix = DMatrix<Complex64>;

/// Tolerance for algebraic identities between exactly representable operators.
pub const ALGEBRA_TOL: f64 = 1e-12;
/// Tolerance for `u·u† = I` checks.
pub const UNITARY_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A `d×d` complex Hermitian matrix.
///
/// The constructor accepts matrices that are Hermitian up to `1e-12` (relative
/// to the largest entry) and stores the exactly Hermitian part.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    m: CMatrix,
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

impl HermitianOperator {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare(m.nrows(), m.ncols()));
        }
        if m.nrows() == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        let deviation = max_abs(&(&m - m.adjoint()));
        let scale = max_abs(&m).max(1.0);
        if deviation > ALGEBRA_TOL * scale {
            return Err(Error::NotHermitian(deviation));
        }
        Ok(Self {
            m: hermitian_part(&m),
        })
    }

    /// Symmetrizes without checking; for matrices Hermitian by construction.
    pub(crate) fn from_hermitian(m: CMatrix) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        Self {
            m: hermitian_part(&m),
        }
    }

    /// Builds an operator from separate real and imaginary row-major tables.
    pub fn from_parts(re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<Self> {
        let dim = re.len();
        if dim == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        let check_rows = |rows: &[Vec<f64>], name: &str| -> Result<()> {
            if rows.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "`{name}` has {} rows, expected {dim}",
                    rows.len()
                )));
            }
            for (r, row) in rows.iter().enumerate() {
                if row.len() != dim {
                    return Err(Error::InvalidInput(format!(
                        "`{name}` row {r} has {} entries, expected {dim}",
                        row.len()
                    )));
                }
            }
            Ok(())
        };
        check_rows(re, "re")?;
        if let Some(im) = im {
            check_rows(im, "im")?;
        }
        let m = CMatrix::from_fn(dim, dim, |r, c| {
            let imag = im.map_or(0.0, |im| im[r][c]);
            Complex64::new(re[r][c], imag)
        });
        Self::new(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            m: CMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    /// Real trace (the imaginary part of a Hermitian trace is zero).
    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .m
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(f64::NAN)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { m: self.m.scale(s) }
    }

    /// `Σ cᵢ Oᵢ` over operators of equal dimension.
    pub fn combination(terms: &[(f64, &HermitianOperator)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidInput("empty linear combination".into()));
        };
        let dim = first.dim();
        let mut acc = CMatrix::zeros(dim, dim);
        for (c, op) in terms {
            if op.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: op.dim(),
                });
            }
            acc += op.m.scale(*c);
        }
        Ok(Self { m: acc })
    }

    /// `A²`.
    pub fn square(&self) -> Self {
        Self::from_hermitian(&self.m * &self.m)
    }

    /// `i[A, B]`, which is Hermitian when `A` and `B` are.
    pub fn i_commutator(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let c = &self.m * &other.m - &other.m * &self.m;
        Ok(Self::from_hermitian(c * I))
    }

    /// `{A, B}`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_hermitian(
            &self.m * &other.m + &other.m * &self.m,
        ))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs(&(&self.m - &other.m))
    }

    pub(crate) fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;

    fn add(self, rhs: Self) -> HermitianOperator {
        HermitianOperator {
            m: &self.m + &rhs.m,
        }
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;

    fn sub(self, rhs: Self) -> HermitianOperator {
        HermitianOperator {
            m: &self.m - &rhs.m,
        }
    }
}

impl Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;

    fn mul(self, rhs: f64) -> HermitianOperator {
        self.scaled(rhs)
    }
}

/// Spatial axis for Pauli and spin-1 operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(Error::InvalidInput(format!("unknown axis `{s}`"))),
        }
    }
}

fn matrix3(rows: [[Complex64; 3]; 3]) -> CMatrix {
    CMatrix::from_fn(3, 3, |r, c| rows[r][c])
}

fn pauli_matrix(axis: Axis) -> CMatrix {
    let rows = match axis {
        Axis::X => [[ZERO, ONE], [ONE, ZERO]],
        Axis::Y => [[ZERO, -I], [I, ZERO]],
        Axis::Z => [[ONE, ZERO], [ZERO, -ONE]],
    };
    CMatrix::from_fn(2, 2, |r, c| rows[r][c])
}

/// Pauli matrix `σ_axis`.
pub fn pauli(axis: Axis) -> HermitianOperator {
    HermitianOperator {
        m: pauli_matrix(axis),
    }
}

/// `[σx, σy, σz]`.
pub fn pauli_basis() -> &'static [HermitianOperator; 3] {
    static BASIS: OnceLock<[HermitianOperator; 3]> = OnceLock::new();
    BASIS.get_or_init(|| Axis::ALL.map(pauli))
}

fn gellmann_matrix(i: usize) -> CMatrix {
    let r3 = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    match i {
        1 => matrix3([[ZERO, ONE, ZERO], [ONE, ZERO, ZERO], [ZERO, ZERO, ZERO]]),
        2 => matrix3([[ZERO, -I, ZERO], [I, ZERO, ZERO], [ZERO, ZERO, ZERO]]),
        3 => matrix3([[ONE, ZERO, ZERO], [ZERO, -ONE, ZERO], [ZERO, ZERO, ZERO]]),
        4 => matrix3([[ZERO, ZERO, ONE], [ZERO, ZERO, ZERO], [ONE, ZERO, ZERO]]),
        5 => matrix3([[ZERO, ZERO, -I], [ZERO, ZERO, ZERO], [I, ZERO, ZERO]]),
        6 => matrix3([[ZERO, ZERO, ZERO], [ZERO, ZERO, ONE], [ZERO, ONE, ZERO]]),
        7 => matrix3([[ZERO, ZERO, ZERO], [ZERO, ZERO, -I], [ZERO, I, ZERO]]),
        8 => matrix3([[r3, ZERO, ZERO], [ZERO, r3, ZERO], [ZERO, ZERO, r3 * -2.0]]),
        _ => unreachable!("gellmann index validated by caller"),
    }
}

/// Gell-Mann matrix `λᵢ`, `1 ≤ i ≤ 8`, in the standard defining representation.
pub fn gellmann(i: usize) -> Result<HermitianOperator> {
    if !(1..=8).contains(&i) {
        return Err(Error::IndexOutOfRange {
            index: i,
            lo: 1,
            hi: 8,
        });
    }
    Ok(gellmann_basis()[i - 1].clone())
}

/// `[λ₁, …, λ₈]`; element `k - 1` is `λ_k`.
pub fn gellmann_basis() -> &'static [HermitianOperator; 8] {
    static BASIS: OnceLock<[HermitianOperator; 8]> = OnceLock::new();
    BASIS.get_or_init(|| {
        std::array::from_fn(|k| HermitianOperator {
            m: gellmann_matrix(k + 1),
        })
    })
}

/// Spin-1 operators in the `|+1⟩, |0⟩, |−1⟩` basis.
pub fn spin1(axis: Axis) -> HermitianOperator {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let si = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    let m = match axis {
        Axis::X => matrix3([[ZERO, s, ZERO], [s, ZERO, s], [ZERO, s, ZERO]]),
        Axis::Y => matrix3([[ZERO, -si, ZERO], [si, ZERO, -si], [ZERO, si, ZERO]]),
        Axis::Z => matrix3([[ONE, ZERO, ZERO], [ZERO, ZERO, ZERO], [ZERO, ZERO, -ONE]]),
    };
    HermitianOperator { m }
}

/// `Σ vₖ σₖ` for a real 3-vector.
pub fn pauli_dot(v: &[f64; 3]) -> HermitianOperator {
    let mut m = CMatrix::zeros(2, 2);
    for (c, op) in v.iter().zip(pauli_basis()) {
        m += op.matrix().scale(*c);
    }
    HermitianOperator { m }
}

/// `Σ vₖ λₖ` for a real 8-vector.
pub fn gellmann_dot(v: &[f64; 8]) -> HermitianOperator {
    let mut m = CMatrix::zeros(3, 3);
    for (c, op) in v.iter().zip(gellmann_basis()) {
        if *c != 0.0 {
            m += op.matrix().scale(*c);
        }
    }
    HermitianOperator { m }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator {
        m: a.m.kronecker(&b.m),
    }
}

/// Largest entrywise deviation of `u·u†` from the identity, or `None` if `u` is not square.
pub fn unitarity_defect(u: &CMatrix) -> Option<f64> {
    if u.nrows() != u.ncols() {
        return None;
    }
    let n = u.nrows();
    Some(max_abs(&(u * u.adjoint() - CMatrix::identity(n, n))))
}

/// `u · op · u†`.
pub fn conjugate(op: &HermitianOperator, u: &CMatrix) -> Result<HermitianOperator> {
    let defect = unitarity_defect(u).ok_or(Error::NotSquare(u.nrows(), u.ncols()))?;
    if u.nrows() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: u.nrows(),
        });
    }
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    Ok(HermitianOperator::from_hermitian(u * &op.m * u.adjoint()))
}
