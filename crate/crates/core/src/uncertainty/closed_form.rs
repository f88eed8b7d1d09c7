//! Closed-form expressions for `Q` with Bloch-direction observables.

use crate::state_space::{omega3_membership, Membership, GEOMETRY_TOL};
use crate::su_algebra::{star, wedge};
use crate::{Error, Result};

const UNIT_TOL: f64 = 1e-10;

fn dot<const N: usize>(u: &[f64; N], v: &[f64; N]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn check_unit<const N: usize>(v: &[f64; N]) -> Result<()> {
    let norm = dot(v, v).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL || !norm.is_finite() {
        return Err(Error::NotUnitVector(norm));
    }
    Ok(())
}

/// `(1 − (r̂·t̂)²)(1 − |n|²)` for qubit spins `A = r̂·σ`, `B = t̂·σ`.
pub fn q_qubit_closed(r: &[f64; 3], t: &[f64; 3], n: &[f64; 3]) -> Result<f64> {
    check_unit(r)?;
    check_unit(t)?;
    let nn = dot(n, n);
    if nn > 1.0 + GEOMETRY_TOL {
        return Err(Error::Positivity {
            min_eigenvalue: (1.0 - nn.sqrt()) / 2.0,
        });
    }
    let rt = dot(r, t);
    Ok((1.0 - rt * rt) * (1.0 - nn))
}

/// Star/wedge expansion of `Q` for `A = â·λ`, `B = b̂·λ` on `ρ(n)`,
/// evaluated term by term.
pub fn q_qutrit_closed(a: &[f64; 8], b: &[f64; 8], n: &[f64; 8]) -> Result<f64> {
    check_unit(a)?;
    check_unit(b)?;
    if omega3_membership(n, GEOMETRY_TOL) == Membership::Outside {
        return Err(Error::FamilyOutOfRange {
            family: "qutrit".into(),
            detail: "Bloch vector outside the qutrit state space".into(),
        });
    }
    let ab = dot(a, b);
    let an = dot(a, n);
    let bn = dot(b, n);
    let aa_n = dot(&star(a, a), n);
    let bb_n = dot(&star(b, b), n);
    let ab_n = dot(&star(a, b), n);
    let w_n = dot(&wedge(a, b), n);
    let c = 4.0 / 9.0;

    let t1 = c * (1.0 - ab * ab);
    let t2 = c * (aa_n + bb_n - 2.0 * ab * ab_n);
    let t3 = c
        * (aa_n * bb_n - ab_n * ab_n + 4.0 * ab * an * bn
            - 2.0 * an * an
            - 2.0 * bn * bn
            - 3.0 * w_n * w_n);
    let t4 = c * (2.0 * aa_n * bn * bn + 2.0 * an * an * bb_n - 4.0 * ab_n * an * bn);
    Ok(t1 + t2 + t3 - t4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state_space::{qubit_density, qutrit_density, random};
    use crate::su_algebra::{gellmann_dot, pauli_dot};
    use crate::uncertainty::q_oracle;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn unit<const N: usize>(rng: &mut impl Rng) -> [f64; N] {
        let v: [f64; N] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = dot(&v, &v).sqrt();
        v.map(|x| x / norm)
    }

    #[test]
    fn qubit_examples() {
        let z = [0.0, 0.0, 1.0];
        let x = [1.0, 0.0, 0.0];
        assert_eq!(q_qubit_closed(&z, &z, &[0.1, 0.2, 0.3]).unwrap(), 0.0);
        assert_eq!(q_qubit_closed(&z, &x, &[0.0; 3]).unwrap(), 1.0);
        assert!(matches!(
            q_qubit_closed(&[1.0, 1.0, 0.0], &x, &[0.0; 3]),
            Err(Error::NotUnitVector(_))
        ));
        assert!(q_qubit_closed(&z, &x, &[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn qubit_matches_oracle() {
        let mut rng = random::rng(11);
        for _ in 0..200 {
            let r: [f64; 3] = unit(&mut rng);
            let t: [f64; 3] = unit(&mut rng);
            let dir: [f64; 3] = unit(&mut rng);
            let len: f64 = rng.random();
            let n = dir.map(|x| x * len);
            let rho = qubit_density(n).unwrap();
            let oracle = q_oracle(&rho, &pauli_dot(&r), &pauli_dot(&t)).unwrap().q;
            assert_abs_diff_eq!(q_qubit_closed(&r, &t, &n).unwrap(), oracle, epsilon = 1e-10);
        }
    }

    #[test]
    fn qutrit_examples() {
        let mut e3 = [0.0; 8];
        e3[2] = 1.0;
        let mut e7 = [0.0; 8];
        e7[6] = 1.0;
        assert_abs_diff_eq!(
            q_qutrit_closed(&e3, &e7, &[0.0; 8]).unwrap(),
            4.0 / 9.0,
            epsilon = 1e-15
        );

        let mut rng = random::rng(5);
        for _ in 0..20 {
            let a: [f64; 8] = unit(&mut rng);
            let rho = random::density_with(3, &mut rng);
            let n = match crate::state_space::bloch_of(&rho).unwrap() {
                crate::state_space::BlochVector::Qutrit(n) => n,
                _ => unreachable!(),
            };
            assert!(q_qutrit_closed(&a, &a, &n).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn qutrit_matches_oracle() {
        let mut rng = random::rng(21);
        for _ in 0..200 {
            let a: [f64; 8] = unit(&mut rng);
            let b: [f64; 8] = unit(&mut rng);
            let rho = random::density_with(3, &mut rng);
            let n = match crate::state_space::bloch_of(&rho).unwrap() {
                crate::state_space::BlochVector::Qutrit(n) => n,
                _ => unreachable!(),
            };
            let rho = qutrit_density(&n).unwrap();
            let oracle = q_oracle(&rho, &gellmann_dot(&a), &gellmann_dot(&b))
                .unwrap()
                .q;
            assert_abs_diff_eq!(
                q_qutrit_closed(&a, &b, &n).unwrap(),
                oracle,
                epsilon = 1e-10
            );
        }
    }
}
