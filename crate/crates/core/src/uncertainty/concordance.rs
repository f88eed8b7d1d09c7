//! Compares each printed expression against the matrix evaluation on a grid
//! of its family and classifies the relation.

use std::fmt;
use std::io::Write;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::formulas::{mixture_params, q_family_formula, FormulaId};
use super::maximize::{q_max_over_settings, MaximizerConfig, SettingTemplate};
use super::q_oracle;
use super::settings::{GellMannPair, SettingFamily};
use crate::state_space::{
    bloch_of, isotropic, linear_entropy, mixture, one_param_range, param_qutrit, qubit_density,
    qutrit_density, random, schmidt_pure, BlochVector, SchmidtCoeffs,
};
use crate::su_algebra::{gellmann, gellmann_dot, pauli_dot};
use crate::{Error, Result};

/// Below this `max_abs_diff` the formula is an exact match.
pub const EXACT_TOL: f64 = 1e-9;
/// Largest ratio spread accepted as a proportional match.
pub const RATIO_SPREAD_TOL: f64 = 1e-6;
/// Formula values at or below this magnitude are excluded from ratio fitting.
pub const RATIO_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ConcordanceVerdict {
    ExactMatch,
    /// `oracle = ratio · formula` on every grid point.
    ProportionalMatch {
        ratio: f64,
    },
    Mismatch,
}

impl ConcordanceVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ExactMatch => "ExactMatch",
            Self::ProportionalMatch { .. } => "ProportionalMatch",
            Self::Mismatch => "Mismatch",
        }
    }
}

impl fmt::Display for ConcordanceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ProportionalMatch { ratio } => write!(f, "ProportionalMatch({ratio:.10})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Grid resolution and seed for the randomly sampled families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Points per parameter axis (random families draw `size²` points,
    /// maximized families use `size` points).
    pub size: usize,
    pub seed: u64,
    pub maximizer: MaximizerConfig,
}

impl GridSpec {
    pub fn new(size: usize, seed: u64) -> Self {
        Self {
            size,
            seed,
            maximizer: MaximizerConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcordancePoint {
    pub params: Vec<f64>,
    pub formula: f64,
    pub oracle: f64,
}

impl ConcordancePoint {
    pub fn abs_diff(&self) -> f64 {
        (self.formula - self.oracle).abs()
    }

    /// `oracle / formula` where the formula is away from zero.
    pub fn ratio(&self) -> Option<f64> {
        (self.formula.abs() > RATIO_FLOOR).then(|| self.oracle / self.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcordanceReport {
    pub formula_id: FormulaId,
    pub expression: String,
    pub grid_size: usize,
    pub seed: u64,
    pub max_abs_diff: f64,
    pub fitted_ratio: Option<f64>,
    pub ratio_spread: Option<f64>,
    pub verdict: ConcordanceVerdict,
    #[serde(skip)]
    pub points: Vec<ConcordancePoint>,
}

impl ConcordanceReport {
    /// One row per grid point: `formula_id, params…, formula_value,
    /// oracle_value, abs_diff, ratio` (ratio empty near formula zeros).
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        let names = self.formula_id.param_names();
        writeln!(
            w,
            "formula_id,{},formula_value,oracle_value,abs_diff,ratio",
            names.join(",")
        )?;
        for pt in &self.points {
            write!(w, "{}", self.formula_id)?;
            for x in &pt.params {
                write!(w, ",{x:.16e}")?;
            }
            write!(
                w,
                ",{:.16e},{:.16e},{:.16e},",
                pt.formula,
                pt.oracle,
                pt.abs_diff()
            )?;
            if let Some(r) = pt.ratio() {
                write!(w, "{r:.16e}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Classifies a set of `(formula, oracle)` points.
pub fn classify(
    points: &[ConcordancePoint],
) -> (f64, Option<f64>, Option<f64>, ConcordanceVerdict) {
    let max_abs_diff = points
        .iter()
        .map(ConcordancePoint::abs_diff)
        .fold(0.0, f64::max);
    let ratios: Vec<f64> = points.iter().filter_map(ConcordancePoint::ratio).collect();
    let (fitted, spread) = if ratios.is_empty() {
        (None, None)
    } else {
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        (Some(mean), Some(hi - lo))
    };
    let zeros_agree = points
        .iter()
        .filter(|p| p.ratio().is_none())
        .all(|p| p.oracle.abs() <= RATIO_FLOOR);
    let verdict = if max_abs_diff < EXACT_TOL {
        ConcordanceVerdict::ExactMatch
    } else {
        match (fitted, spread) {
            // A vanishing ratio means the oracle is zero where the formula is
            // not, which is no proportionality at all.
            (Some(ratio), Some(s))
                if s < RATIO_SPREAD_TOL && ratio.abs() > RATIO_SPREAD_TOL && zeros_agree =>
            {
                ConcordanceVerdict::ProportionalMatch { ratio }
            }
            _ => ConcordanceVerdict::Mismatch,
        }
    };
    (max_abs_diff, fitted, spread, verdict)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

fn unit<const N: usize>(rng: &mut ChaCha8Rng) -> [f64; N] {
    let v: [f64; N] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / norm)
}

fn schmidt3(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let k: Vec<f64> = (0..3).map(|_| rng.random::<f64>() + 0.05).collect();
    SchmidtCoeffs::normalized(k)
        .expect("positive coefficients")
        .values()
        .to_vec()
}

fn angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.random::<f64>() * std::f64::consts::TAU
}

/// Parameter grid for `id`. Only admissible points are kept.
fn grid(id: FormulaId, spec: &GridSpec) -> Result<Vec<Vec<f64>>> {
    let n = spec.size;
    let mut rng = random::rng(spec.seed);
    let s3 = 3f64.sqrt();
    let pts = match id {
        FormulaId::QubitClosed => (0..n * n)
            .map(|_| {
                let r: [f64; 3] = unit(&mut rng);
                let t: [f64; 3] = unit(&mut rng);
                let d: [f64; 3] = unit(&mut rng);
                let len: f64 = rng.random();
                [r, t, d.map(|x| x * len)].concat()
            })
            .collect(),
        FormulaId::QutritClosed => (0..n * n)
            .map(|_| {
                let a: [f64; 8] = unit(&mut rng);
                let b: [f64; 8] = unit(&mut rng);
                let rho = random::density_with(3, &mut rng);
                let BlochVector::Qutrit(nv) = bloch_of(&rho)? else {
                    unreachable!("qutrit state")
                };
                Ok([a, b, nv].concat())
            })
            .collect::<Result<_>>()?,
        FormulaId::OneParamN8 | FormulaId::OneParamN1 => {
            let (i, bs): (usize, &[f64]) = if id == FormulaId::OneParamN8 {
                (8, &[7.0, 6.0])
            } else {
                (1, &[7.0, 6.0, 5.0, 4.0])
            };
            let (lo, hi) = one_param_range(i)?;
            linspace(lo, hi, n)
                .into_iter()
                .flat_map(|v| bs.iter().map(move |&b| vec![v, b]))
                .collect()
        }
        FormulaId::TwoParamLambda5 | FormulaId::TwoParamLambda4 => {
            let axis = linspace(-1.0, 1.0, n);
            let mut pts: Vec<Vec<f64>> = axis
                .iter()
                .flat_map(|&a| axis.iter().map(move |&b| vec![a, b]))
                .filter(|p| param_qutrit(&[3, 4], p).is_ok())
                .collect();
            let r = (2.0f64 / 3.0).sqrt();
            pts.push(vec![1.0 / s3, r]);
            pts.push(vec![1.0 / s3, -r]);
            pts
        }
        FormulaId::ThreeParamLambda5 | FormulaId::ThreeParamLambda4 => {
            let axis = linspace(-1.0, 1.0, n);
            let mut pts: Vec<Vec<f64>> = Vec::new();
            for &a in &axis {
                for &b in &axis {
                    for &c in &axis {
                        let p = vec![a, b, c];
                        if param_qutrit(&[3, 4, 5], &p).is_ok() {
                            pts.push(p);
                        }
                    }
                }
            }
            let r = (2.0f64 / 3.0).sqrt();
            for k in 0..8 {
                let phi = k as f64 * std::f64::consts::FRAC_PI_4;
                pts.push(vec![1.0 / s3, r * phi.cos(), r * phi.sin()]);
            }
            pts
        }
        FormulaId::MixtureEntropy | FormulaId::MixtureQmax => linspace(0.0, 1.0, n)
            .into_iter()
            .map(|p| {
                let mut v = schmidt3(&mut rng);
                v.extend(schmidt3(&mut rng));
                v.push(p);
                v
            })
            .collect(),
        FormulaId::MixtureQ => (0..n * n)
            .map(|_| {
                let mut v = schmidt3(&mut rng);
                v.extend(schmidt3(&mut rng));
                v.push(rng.random());
                v.push(angle(&mut rng));
                v.push(angle(&mut rng));
                v
            })
            .collect(),
        FormulaId::IsotropicEntropy | FormulaId::IsotropicQmax => {
            linspace(0.0, 1.0, n).into_iter().map(|p| vec![p]).collect()
        }
        FormulaId::IsotropicQ => (0..n * n)
            .map(|_| vec![rng.random(), angle(&mut rng), angle(&mut rng)])
            .collect(),
        FormulaId::PureTwoQutrit | FormulaId::PureTwoQutritFree => (0..n * n)
            .map(|_| {
                let mut v = schmidt3(&mut rng);
                let (t3, t4) = (angle(&mut rng), angle(&mut rng));
                let t2 = if id == FormulaId::PureTwoQutrit {
                    t3 + t4
                } else {
                    angle(&mut rng)
                };
                v.extend([t2, t3, t4]);
                v
            })
            .collect(),
    };
    Ok(pts)
}

fn two_qutrit_q(rho: &crate::state_space::DensityMatrix, t2: f64, t3: f64, t4: f64) -> Result<f64> {
    let (a, b) = SettingFamily::TwoQutrit {
        pair: GellMannPair::P12,
        theta2: t2,
        theta3: t3,
        theta4: t4,
    }
    .observables()?;
    Ok(q_oracle(rho, &a, &b)?.q)
}

/// Matrix-level counterpart of `id` at `params`.
pub fn oracle_value(id: FormulaId, params: &[f64], maximizer: &MaximizerConfig) -> Result<f64> {
    let lambda = |k: f64| gellmann(k as usize);
    match id {
        FormulaId::QubitClosed => {
            let v3 = |k: usize| [params[k], params[k + 1], params[k + 2]];
            let rho = qubit_density(v3(6))?;
            Ok(q_oracle(&rho, &pauli_dot(&v3(0)), &pauli_dot(&v3(3)))?.q)
        }
        FormulaId::QutritClosed => {
            let v8 = |k: usize| -> [f64; 8] { std::array::from_fn(|i| params[k + i]) };
            let rho = qutrit_density(&v8(16))?;
            Ok(q_oracle(&rho, &gellmann_dot(&v8(0)), &gellmann_dot(&v8(8)))?.q)
        }
        FormulaId::OneParamN8 | FormulaId::OneParamN1 => {
            let i = if id == FormulaId::OneParamN8 { 8 } else { 1 };
            let rho = param_qutrit(&[i], &params[..1])?.density()?;
            Ok(q_oracle(&rho, &lambda(3.0)?, &lambda(params[1])?)?.q)
        }
        FormulaId::TwoParamLambda5
        | FormulaId::TwoParamLambda4
        | FormulaId::ThreeParamLambda5
        | FormulaId::ThreeParamLambda4 => {
            let indices: &[usize] = if params.len() == 2 {
                &[3, 4]
            } else {
                &[3, 4, 5]
            };
            let rho = param_qutrit(indices, params)?.density()?;
            let b = match id {
                FormulaId::TwoParamLambda5 | FormulaId::ThreeParamLambda5 => 5.0,
                _ => 4.0,
            };
            Ok(q_oracle(&rho, &lambda(3.0)?, &lambda(b)?)?.q)
        }
        FormulaId::MixtureEntropy => Ok(linear_entropy(&mixture(&mixture_params(params)?)?)),
        FormulaId::MixtureQ => {
            let rho = mixture(&mixture_params(params)?)?;
            let (t3, t4) = (params[7], params[8]);
            two_qutrit_q(&rho, t3 + t4, t3, t4)
        }
        FormulaId::MixtureQmax => {
            let rho = mixture(&mixture_params(params)?)?;
            Ok(q_max_over_settings(&rho, &SettingTemplate::two_qutrit_default(), maximizer)?.q_max)
        }
        FormulaId::IsotropicEntropy => Ok(linear_entropy(&isotropic(params[0])?)),
        FormulaId::IsotropicQ => {
            let rho = isotropic(params[0])?;
            let (t3, t4) = (params[1], params[2]);
            two_qutrit_q(&rho, t3 + t4, t3, t4)
        }
        FormulaId::IsotropicQmax => {
            let rho = isotropic(params[0])?;
            Ok(q_max_over_settings(&rho, &SettingTemplate::two_qutrit_default(), maximizer)?.q_max)
        }
        FormulaId::PureTwoQutrit | FormulaId::PureTwoQutritFree => {
            let rho = schmidt_pure(&SchmidtCoeffs::new(params[0..3].to_vec())?);
            two_qutrit_q(&rho, params[3], params[4], params[5])
        }
    }
}

/// Runs the comparison for one formula.
pub fn concordance(id: FormulaId, spec: &GridSpec) -> Result<ConcordanceReport> {
    let params = grid(id, spec)?;
    if params.is_empty() {
        return Err(Error::EmptyGrid(id.as_str().into()));
    }
    let points = params
        .into_iter()
        .map(|p| {
            let formula = q_family_formula(id, &p)?;
            let oracle = oracle_value(id, &p, &spec.maximizer)?;
            Ok(ConcordancePoint {
                params: p,
                formula,
                oracle,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (max_abs_diff, fitted_ratio, ratio_spread, verdict) = classify(&points);
    Ok(ConcordanceReport {
        formula_id: id,
        expression: id.expression().into(),
        grid_size: points.len(),
        seed: spec.seed,
        max_abs_diff,
        fitted_ratio,
        ratio_spread,
        verdict,
        points,
    })
}
