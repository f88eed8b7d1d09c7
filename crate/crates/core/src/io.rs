//! Text formats for states and observables.
//!
//! States are JSON objects:
//!
//! ```text
//! {"kind":"bloch","dim":3,"n":[0,0,0,0,0,0,0,-1]}
//! {"kind":"density","dim":2,"re":[[0.5,0],[0,0.5]],"im":[[0,0],[0,0]]}
//! {"kind":"family","name":"isotropic","params":{"p":0.5}}
//! ```
//!
//! Family names and their `params`:
//! `one_param {i, value}`, `two_param {indices, values}`,
//! `three_param {indices, values}`, `schmidt {k}`,
//! `mixture {p, psi1, psi2}`, `isotropic {p}`, `werner_qubit {p}`.
//!
//! Observables are short strings: `lambda3`, `sigmaz`, `spinx`, a JSON
//! direction such as `[0.6,0.8,0]` (3 components for Pauli, 8 for Gell-Mann),
//! a JSON matrix `{"re":[[..]],"im":[[..]]}`, or a tensor product of these
//! joined by `:` as in `lambda1:lambda2`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::state_space::{
    isotropic, mixture, param_qutrit, qubit_density, qutrit_density, schmidt_pure, werner_qubit,
    DensityMatrix, MixtureParam, SchmidtCoeffs,
};
use crate::su_algebra::{
    gellmann, gellmann_dot, pauli, pauli_dot, spin1, tensor, Axis, HermitianOperator,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Bloch {
        dim: usize,
        n: Vec<f64>,
    },
    Density {
        dim: usize,
        re: Vec<Vec<f64>>,
        #[serde(default)]
        im: Option<Vec<Vec<f64>>>,
    },
    Family {
        name: String,
        #[serde(default)]
        params: Value,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OneParam {
    i: usize,
    value: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MultiParam {
    indices: Vec<usize>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Schmidt {
    k: SchmidtCoeffs,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Mixture {
    p: f64,
    psi1: SchmidtCoeffs,
    psi2: SchmidtCoeffs,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Scalar {
    p: f64,
}

fn params<T: DeserializeOwned>(family: &str, v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| {
        // Schmidt validation failures surface as serde errors; keep them
        // recognizable as state-space errors.
        let msg = e.to_string();
        if msg.contains("not normalized") {
            Error::FamilyOutOfRange {
                family: family.into(),
                detail: msg,
            }
        } else {
            Error::InvalidInput(format!("family `{family}` params: {msg}"))
        }
    })
}

impl StateSpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("state JSON: {e}")))
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        match self {
            Self::Bloch { dim, n } => match (dim, n.len()) {
                (2, 3) => qubit_density([n[0], n[1], n[2]]),
                (3, 8) => qutrit_density(&std::array::from_fn(|k| n[k])),
                (2 | 3, len) => Err(Error::InvalidInput(format!(
                    "field `n`: dim {dim} needs {} components, got {len}",
                    if *dim == 2 { 3 } else { 8 }
                ))),
                _ => Err(Error::InvalidInput(format!(
                    "field `dim`: Bloch states need dim 2 or 3, got {dim}"
                ))),
            },
            Self::Density { dim, re, im } => {
                if re.len() != *dim {
                    return Err(Error::InvalidInput(format!(
                        "field `re`: expected {dim} rows, got {}",
                        re.len()
                    )));
                }
                let op = HermitianOperator::from_parts(re, im.as_deref())?;
                if ![2, 3, 4, 9].contains(dim) {
                    return Err(Error::UnsupportedDimension(*dim));
                }
                DensityMatrix::new(op)
            }
            Self::Family { name, params: p } => match name.as_str() {
                "one_param" => {
                    let x: OneParam = params(name, p)?;
                    param_qutrit(&[x.i], &[x.value])?.density()
                }
                "two_param" | "three_param" => {
                    let x: MultiParam = params(name, p)?;
                    let want = if name == "two_param" { 2 } else { 3 };
                    if x.indices.len() != want {
                        return Err(Error::InvalidInput(format!(
                            "field `indices`: {name} needs {want} indices"
                        )));
                    }
                    param_qutrit(&x.indices, &x.values)?.density()
                }
                "schmidt" => Ok(schmidt_pure(&params::<Schmidt>(name, p)?.k)),
                "mixture" => {
                    let x: Mixture = params(name, p)?;
                    mixture(&MixtureParam::new(x.p, x.psi1, x.psi2)?)
                }
                "isotropic" => isotropic(params::<Scalar>(name, p)?.p),
                "werner_qubit" => werner_qubit(params::<Scalar>(name, p)?.p),
                other => Err(Error::InvalidInput(format!(
                    "field `name`: unknown family `{other}`"
                ))),
            },
        }
    }
}

/// Parses and builds a state in one step.
pub fn parse_state(json: &str) -> Result<DensityMatrix> {
    StateSpec::parse(json)?.density()
}

fn parse_factor(spec: &str) -> Result<HermitianOperator> {
    let s = spec.trim();
    let lower = s.to_ascii_lowercase();
    if let Some(k) = lower.strip_prefix("lambda") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::InvalidInput(format!("observable `{s}`: bad λ index")))?;
        return gellmann(k);
    }
    for (prefix, build) in [
        ("sigma", pauli as fn(Axis) -> HermitianOperator),
        ("spin", spin1 as fn(Axis) -> HermitianOperator),
    ] {
        if let Some(axis) = lower.strip_prefix(prefix) {
            return Ok(build(axis.parse()?));
        }
    }
    if s.starts_with('[') {
        let v: Vec<f64> = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("observable direction: {e}")))?;
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotUnitVector(norm));
        }
        return match v.len() {
            3 => Ok(pauli_dot(&[v[0], v[1], v[2]])),
            8 => Ok(gellmann_dot(&std::array::from_fn(|k| v[k]))),
            n => Err(Error::InvalidInput(format!(
                "observable direction needs 3 or 8 components, got {n}"
            ))),
        };
    }
    if s.starts_with('{') {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            re: Vec<Vec<f64>>,
            #[serde(default)]
            im: Option<Vec<Vec<f64>>>,
        }
        let raw: Raw = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("observable matrix: {e}")))?;
        return HermitianOperator::from_parts(&raw.re, raw.im.as_deref());
    }
    Err(Error::InvalidInput(format!(
        "unrecognized observable `{s}`"
    )))
}

/// Splits on `:` outside brackets, braces and strings.
fn tensor_factors(spec: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut in_str, mut start) = (0i32, false, 0);
    for (i, c) in spec.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '[' | '{' if !in_str => depth += 1,
            ']' | '}' if !in_str => depth -= 1,
            ':' if !in_str && depth == 0 => {
                out.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&spec[start..]);
    out
}

/// Parses an observable spec; a top-level `:` separates tensor factors.
pub fn parse_observable(spec: &str) -> Result<HermitianOperator> {
    let mut factors = tensor_factors(spec).into_iter().map(parse_factor);
    let first = factors
        .next()
        .ok_or_else(|| Error::InvalidInput("empty observable".into()))??;
    factors.try_fold(first, |acc, f| Ok(tensor(&acc, &f?)))
}
