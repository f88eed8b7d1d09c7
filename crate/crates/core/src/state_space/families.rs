//! Single-qutrit sections of Ω₃ where only a chosen subset of the eight Bloch
//! components is nonzero.

use super::QutritBloch;
use crate::su_algebra::gellmann_dot;
use crate::{Error, Result};

/// Largest `t ≥ 0` with `t·u` inside Ω₃ (infinite for `u = 0`).
///
/// `(I + √3 t u·λ)/3 ≥ 0` holds while `1 + √3 t μ_min ≥ 0`, `μ_min` the
/// smallest eigenvalue of `u·λ`.
pub fn admissible_scale(u: &[f64; 8]) -> f64 {
    let mu_min = gellmann_dot(u).min_eigenvalue();
    if mu_min >= 0.0 {
        f64::INFINITY
    } else {
        1.0 / (3f64.sqrt() * -mu_min)
    }
}

/// Admissible interval of `nᵢ` for the one-parameter family along `eᵢ`.
pub fn one_param_range(i: usize) -> Result<(f64, f64)> {
    check_index(i)?;
    let mut u = [0.0; 8];
    u[i - 1] = 1.0;
    let hi = admissible_scale(&u);
    u[i - 1] = -1.0;
    let lo = -admissible_scale(&u);
    Ok((lo, hi))
}

fn check_index(i: usize) -> Result<()> {
    if (1..=8).contains(&i) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index: i,
            lo: 1,
            hi: 8,
        })
    }
}

/// Qutrit with `n[indices[k] - 1] = values[k]` and all other components zero.
pub fn param_qutrit(indices: &[usize], values: &[f64]) -> Result<QutritBloch> {
    if indices.len() != values.len() || indices.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{} indices but {} values",
            indices.len(),
            values.len()
        )));
    }
    let mut n = [0.0; 8];
    for (pos, (&i, &v)) in indices.iter().zip(values).enumerate() {
        check_index(i)?;
        if indices[..pos].contains(&i) {
            return Err(Error::InvalidInput(format!("index {i} repeated")));
        }
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!("n{i} is not finite")));
        }
        n[i - 1] = v;
    }
    QutritBloch::new(n).map_err(|err| match err {
        Error::Positivity { min_eigenvalue } => out_of_range(indices, &n, min_eigenvalue),
        other => other,
    })
}

fn out_of_range(indices: &[usize], n: &[f64; 8], min_eigenvalue: f64) -> Error {
    let family = match indices.len() {
        1 => "one_param",
        2 => "two_param",
        3 => "three_param",
        _ => "param",
    };
    let detail = if let [i] = indices {
        let (lo, hi) = one_param_range(*i).expect("index checked");
        format!("positivity violated (min eigenvalue {min_eigenvalue:.3e}); n{i} must lie in [{lo:.12}, {hi:.12}]")
    } else {
        let t = admissible_scale(n);
        format!(
            "positivity violated (min eigenvalue {min_eigenvalue:.3e}); the vector can be scaled by at most {t:.12}"
        )
    };
    Error::FamilyOutOfRange {
        family: family.into(),
        detail,
    }
}

pub fn one_param_qutrit(i: usize, v: f64) -> Result<QutritBloch> {
    param_qutrit(&[i], &[v])
}

pub fn two_param_qutrit(indices: [usize; 2], values: [f64; 2]) -> Result<QutritBloch> {
    param_qutrit(&indices, &values)
}

pub fn three_param_qutrit(indices: [usize; 3], values: [f64; 3]) -> Result<QutritBloch> {
    param_qutrit(&indices, &values)
}
