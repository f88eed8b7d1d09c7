//! `gurmix`: command-line front end for the uncertainty-based purity tests.
//!
//! Exit codes: 0 success, 1 audit failure, 2 invalid input, 3 state outside
//! the state space, 4 numerical failure. Verdicts are part of the output, not
//! the exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gurmix_core::audit::run_audit;
use gurmix_core::detection::{
    blind_spot_with, budget_table, classify_two_qutrit, run_qutrit_scheme, BlindSpotFamily,
    SchemeConfig, DEFAULT_EPSILON,
};
use gurmix_core::io::{parse_observable, parse_state};
use gurmix_core::report::{
    budget_summary, concordance_batch, concordance_summary, param_range, sweep, write_sweep_csv,
    SweepFamily,
};
use gurmix_core::state_space::SchmidtCoeffs;
use gurmix_core::uncertainty::{FormulaId, GridSpec, MaximizerConfig};
use gurmix_core::{q_oracle, Error};

#[derive(Parser)]
#[command(
    name = "gurmix",
    version,
    about = "Detect mixedness of qubit and qutrit states from the uncertainty functional Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Qubit,
    OneParam,
    Isotropic,
    Mixture,
    WernerQubit,
}

#[derive(Clone, Copy, ValueEnum)]
enum BlindFamilyArg {
    Qubit,
    Isotropic,
    OneParam,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Q(A, B, ρ) with its breakdown.
    EvalQ {
        /// State as inline JSON or a path to a JSON file.
        #[arg(long)]
        state: String,
        /// Observable A, e.g. lambda3, sigmaz, spinx, lambda1:lambda2, [0.6,0.8,0].
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the sequential single-qutrit scheme.
    Scheme {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Declare mixed as soon as a pair splits.
        #[arg(long)]
        strict_pairs: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a two-qutrit state by maximizing Q over the constrained settings.
    Classify {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Grid points per angle.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare printed formulas against the matrix evaluation.
    Concordance {
        /// Formula id, or `all`.
        formula: String,
        /// Points per parameter axis.
        #[arg(long, default_value_t = 24)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for the per-formula JSON and CSV files.
        #[arg(long, default_value = "concordance")]
        out: PathBuf,
    },
    /// Measurement counts next to the tomography comparison table.
    Budget {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a one-parameter family and write CSV.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Bloch index for `one-param`.
        #[arg(long)]
        index: Option<usize>,
        /// Schmidt coefficients of the two mixture components, comma separated.
        #[arg(long, value_delimiter = ',')]
        psi1: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        psi2: Vec<f64>,
        #[arg(long, allow_hyphen_values = true)]
        start: f64,
        #[arg(long, allow_hyphen_values = true)]
        stop: f64,
        #[arg(long)]
        step: f64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Grid points per angle for the settings maximizer.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Range of mixed states a threshold ε reports as pure.
    BlindSpot {
        #[arg(long, value_enum)]
        family: BlindFamilyArg,
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized invariant audit.
    Audit {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_positivity() {
            3
        } else if matches!(e, Error::Numerical(_)) {
            4
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    invalid(format!("{}: {e}", path.display()))
}

fn read_state(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| io_failure(Path::new(arg), e))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| invalid(format!("stdout: {e}")))
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: 4,
        message: format!("serialization: {e}"),
    })?;
    s.push('\n');
    Ok(s)
}

fn check_epsilon(epsilon: f64) -> Result<(), Failure> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!(
            "--epsilon must be positive, got {epsilon}"
        )))
    }
}

fn maximizer(grid: usize) -> Result<MaximizerConfig, Failure> {
    if grid < 8 {
        return Err(invalid(format!("--grid must be at least 8, got {grid}")));
    }
    Ok(MaximizerConfig {
        grid,
        ..MaximizerConfig::default()
    })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::EvalQ { state, a, b, out } => {
            let rho = parse_state(&read_state(&state)?)?;
            let a = parse_observable(&a)?;
            let b = parse_observable(&b)?;
            let report = q_oracle(&rho, &a, &b)?;
            emit(out.as_deref(), &to_json(&report)?)?;
        }
        Command::Scheme {
            state,
            epsilon,
            strict_pairs,
            out,
        } => {
            check_epsilon(epsilon)?;
            let rho = parse_state(&read_state(&state)?)?;
            if rho.dim() != 3 {
                return Err(invalid(format!(
                    "the scheme needs a qutrit state, got dimension {}",
                    rho.dim()
                )));
            }
            let cfg = SchemeConfig {
                epsilon,
                strict_pairs,
                ..SchemeConfig::default()
            };
            let trace = run_qutrit_scheme(&rho, &cfg)?;
            emit(out.as_deref(), &to_json(&trace)?)?;
        }
        Command::Classify {
            state,
            epsilon,
            grid,
            out,
        } => {
            check_epsilon(epsilon)?;
            let cfg = maximizer(grid)?;
            let rho = parse_state(&read_state(&state)?)?;
            if rho.dim() != 9 {
                return Err(invalid(format!(
                    "classification needs a two-qutrit state, got dimension {}",
                    rho.dim()
                )));
            }
            let c = classify_two_qutrit(&rho, epsilon, &cfg)?;
            emit(out.as_deref(), &to_json(&c)?)?;
        }
        Command::Concordance {
            formula,
            grid,
            seed,
            out,
        } => {
            if grid < 2 {
                return Err(invalid(format!("--grid must be at least 2, got {grid}")));
            }
            let ids = if formula == "all" {
                FormulaId::ALL.to_vec()
            } else {
                vec![formula.parse::<FormulaId>()?]
            };
            let reports = concordance_batch(&ids, &GridSpec::new(grid, seed))?;
            fs::create_dir_all(&out).map_err(|e| io_failure(&out, e))?;
            for r in &reports {
                let json_path = out.join(format!("{}.json", r.formula_id));
                fs::write(&json_path, to_json(r)?).map_err(|e| io_failure(&json_path, e))?;
                let csv_path = out.join(format!("{}.csv", r.formula_id));
                let mut buf = Vec::new();
                r.write_csv(&mut buf)
                    .map_err(|e| io_failure(&csv_path, e))?;
                fs::write(&csv_path, buf).map_err(|e| io_failure(&csv_path, e))?;
            }
            let summary = concordance_summary(&reports);
            let path = out.join("summary.txt");
            fs::write(&path, &summary).map_err(|e| io_failure(&path, e))?;
            emit(None, &summary)?;
        }
        Command::Budget { format, out } => {
            let rows = budget_table()?;
            let text = match format {
                Format::Json => to_json(&rows)?,
                Format::Text => budget_summary(&rows),
                Format::Csv => {
                    let mut s =
                        String::from("system,tomography,printed,computed_min,computed_max,note\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{},\"{}\"\n",
                            r.system,
                            r.tomography,
                            r.printed,
                            r.computed_min,
                            r.computed_max,
                            r.note
                        ));
                    }
                    s
                }
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Sweep {
            family,
            index,
            psi1,
            psi2,
            start,
            stop,
            step,
            epsilon,
            grid,
            format,
            out,
        } => {
            check_epsilon(epsilon)?;
            let cfg = maximizer(grid)?;
            let family = match family {
                FamilyArg::Qubit => SweepFamily::Qubit,
                FamilyArg::Isotropic => SweepFamily::Isotropic,
                FamilyArg::WernerQubit => SweepFamily::WernerQubit,
                FamilyArg::OneParam => SweepFamily::OneParam {
                    i: index.ok_or_else(|| invalid("--index is required for one-param"))?,
                },
                FamilyArg::Mixture => {
                    let coeffs = |v: Vec<f64>, flag: &str| {
                        SchmidtCoeffs::new(v).map_err(|e| invalid(format!("{flag}: {e}")))
                    };
                    SweepFamily::Mixture {
                        psi1: coeffs(psi1, "--psi1")?,
                        psi2: coeffs(psi2, "--psi2")?,
                    }
                }
            };
            let params = param_range(start, stop, step)?;
            // A range leaving the state space is an input error here.
            let rows =
                sweep(&family, &params, epsilon, &cfg).map_err(|e| invalid(e.to_string()))?;
            let text = match format {
                Format::Json => to_json(&rows)?,
                Format::Csv | Format::Text => {
                    let mut buf = Vec::new();
                    write_sweep_csv(&rows, &mut buf).map_err(|e| invalid(e.to_string()))?;
                    String::from_utf8(buf).expect("CSV is ASCII")
                }
            };
            emit(out.as_deref(), &text)?;
        }
        Command::BlindSpot {
            family,
            index,
            epsilon,
            grid,
            out,
        } => {
            check_epsilon(epsilon)?;
            let cfg = maximizer(grid)?;
            let family = match family {
                BlindFamilyArg::Qubit => BlindSpotFamily::QubitOrthogonal,
                BlindFamilyArg::Isotropic => BlindSpotFamily::Isotropic,
                BlindFamilyArg::OneParam => BlindSpotFamily::OneParamQutrit {
                    i: index.ok_or_else(|| invalid("--index is required for one-param"))?,
                },
            };
            let b = blind_spot_with(family, epsilon, &cfg)?;
            emit(out.as_deref(), &to_json(&b)?)?;
        }
        Command::Audit { count, seed } => {
            let summary = run_audit(count, seed)?;
            let mut text = String::new();
            for c in &summary.checks {
                text.push_str(&format!(
                    "{:<20} passed {:>6}  failed {:>6}{}\n",
                    c.name,
                    c.passed,
                    c.failed,
                    c.first_failure
                        .map_or(String::new(), |k| format!("  first failure at sample {k}"))
                ));
            }
            emit(None, &text)?;
            if !summary.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
