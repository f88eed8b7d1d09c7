use thiserror::Error;

/// Errors produced by state construction, operator algebra and the detection schemes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("state is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    Positivity { min_eigenvalue: f64 },

    #[error("{family}: {detail}")]
    FamilyOutOfRange { family: String, detail: String },

    #[error("Schmidt coefficients not normalized (sum of squares {0})")]
    Unnormalized(f64),

    #[error("direction vector is not unit norm (norm {0})")]
    NotUnitVector(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown formula id `{0}`")]
    UnknownFormula(String),

    #[error("no valid grid points for `{0}`")]
    EmptyGrid(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for errors caused by a state outside the physical state space.
    pub fn is_positivity(&self) -> bool {
        matches!(
            self,
            Error::Positivity { .. } | Error::FamilyOutOfRange { .. } | Error::Unnormalized(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
