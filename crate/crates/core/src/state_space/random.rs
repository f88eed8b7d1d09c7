//! Seeded random states, operators and unitaries for property tests and the audit.
//!
//! The constructions are fixed and documented rather than canonical measures:
//! pure states come from normalized complex Gaussian vectors, mixed states are
//! convex combinations of `dim` such pures with Dirichlet(1, …, 1) weights.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use super::DensityMatrix;
use crate::su_algebra::{CMatrix, HermitianOperator};
use crate::{Error, Result};

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 3 | 4 | 9 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_ket(dim: usize, rng: &mut impl Rng) -> DVector<Complex64> {
    DVector::from_fn(dim, |_, _| gaussian(rng))
}

pub fn pure_with(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    loop {
        let ket = gaussian_ket(dim, rng);
        if ket.norm() > 1e-8 {
            return DensityMatrix::from_ket(&ket).expect("nonzero ket");
        }
    }
}

pub fn density_with(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let weights: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = weights.iter().sum();
    let mut m = CMatrix::zeros(dim, dim);
    for w in weights {
        m += pure_with(dim, rng).matrix().scale(w / total);
    }
    DensityMatrix::new(HermitianOperator::from_hermitian(m)).expect("convex mixture of pure states")
}

/// `(G + G†)/2` with standard complex Gaussian entries.
pub fn hermitian_with(dim: usize, rng: &mut impl Rng) -> HermitianOperator {
    let g = CMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    HermitianOperator::from_hermitian(g)
}

/// QR of a complex Ginibre matrix with the phases of `R`'s diagonal absorbed.
pub fn unitary_with(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMatrix::from_diagonal(&DVector::from_fn(dim, |i, _| {
        let d = r[(i, i)];
        if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        }
    }));
    q * phases
}

pub fn random_pure(dim: usize, seed: u64) -> Result<DensityMatrix> {
    check_dim(dim)?;
    Ok(pure_with(dim, &mut rng(seed)))
}

pub fn random_density(dim: usize, seed: u64) -> Result<DensityMatrix> {
    check_dim(dim)?;
    Ok(density_with(dim, &mut rng(seed)))
}

pub fn random_hermitian(dim: usize, seed: u64) -> Result<HermitianOperator> {
    check_dim(dim)?;
    Ok(hermitian_with(dim, &mut rng(seed)))
}

pub fn random_unitary(dim: usize, seed: u64) -> Result<CMatrix> {
    check_dim(dim)?;
    Ok(unitary_with(dim, &mut rng(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state_space::{purity, POSITIVITY_TOL, TRACE_TOL};
    use crate::su_algebra::{unitarity_defect, UNITARY_TOL};

    #[test]
    fn random_pure_has_unit_purity() {
        for seed in 0..50 {
            for dim in [2, 3, 4, 9] {
                let rho = random_pure(dim, seed).unwrap();
                assert!((purity(&rho) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn random_density_invariants() {
        for seed in 0..1000 {
            let dim = [2, 3, 4, 9][(seed % 4) as usize];
            let rho = random_density(dim, seed).unwrap();
            assert!((rho.operator().trace() - 1.0).abs() < TRACE_TOL);
            assert!(rho.operator().min_eigenvalue() >= -POSITIVITY_TOL);
            assert_eq!(rho.dim(), dim);
        }
    }

    #[test]
    fn determinism() {
        assert_eq!(
            random_density(3, 11).unwrap(),
            random_density(3, 11).unwrap()
        );
        assert_ne!(
            random_density(3, 11).unwrap(),
            random_density(3, 12).unwrap()
        );
        assert_eq!(random_unitary(4, 5).unwrap(), random_unitary(4, 5).unwrap());
    }

    #[test]
    fn unitaries_are_unitary() {
        for seed in 0..20 {
            let u = random_unitary(9, seed).unwrap();
            assert!(unitarity_defect(&u).unwrap() < UNITARY_TOL);
        }
        assert!(matches!(
            random_unitary(5, 0),
            Err(Error::UnsupportedDimension(5))
        ));
    }
}
