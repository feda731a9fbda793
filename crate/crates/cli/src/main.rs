//! `pdde`: verify candidate pairs against the three system families,
//! construct theorem solutions, run the nonexistence gate, compute growth
//! order, and check expressions. JSON parameter files in, a single JSON
//! report on standard output.
//!
//! Exit codes: 0 for VERIFIED / constructed / any gate verdict, 1 for
//! REFUTED or failed constraints, 2 for input errors.

mod params;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pdde_core::analysis::order_of_growth;
use pdde_core::parse::{parse_ast, parse_exppoly, print_exppoly, Ast, AstKind};
use pdde_core::systems::{verify, Verdict};
use pdde_core::theorems::{construct_solution, gate_nonexistence, TheoremError};

use params::{ParamsFile, TheoremFile};
use report::*;

#[derive(Debug)]
pub struct CliError {
    message: String,
    exit: u8,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            exit: 2,
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            exit: 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "pdde", version, about = "Exponential-polynomial engine for Fermat-type partial differential-difference systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a candidate pair (f1, f2) against a system.
    Verify {
        /// System kind; cross-checked against the params file.
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        f1: PathBuf,
        #[arg(long)]
        f2: PathBuf,
        #[arg(long)]
        samples: Option<u32>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate theorem constraints, build the solution pair, verify it.
    Construct {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        samples: Option<u32>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nonexistence gate for the general system.
    Gate {
        #[arg(long)]
        m1: u32,
        #[arg(long)]
        m2: u32,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth order of an expression.
    Order {
        #[arg(long)]
        expr: PathBuf,
        /// Ambient dimension; inferred from the expression when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse an expression and print its canonical form.
    ParseCheck {
        #[arg(long)]
        expr: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn read_params(path: &Path) -> Result<ParamsFile, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn emit(json: &impl serde::Serialize, out: &Option<PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(json)
        .map_err(|e| CliError::input(format!("serialization failed: {e}")))?;
    text.push('\n');
    print!("{text}");
    if let Some(path) = out {
        fs::write(path, &text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Largest variable index mentioned in the syntax tree.
fn max_var_index(ast: &Ast) -> usize {
    match &ast.kind {
        AstKind::Var(k) => *k,
        AstKind::Neg(a) | AstKind::Pow(a, _) | AstKind::Exp(a) | AstKind::Log(a)
        | AstKind::Sqrt(a) => max_var_index(a),
        AstKind::Add(a, b) | AstKind::Sub(a, b) | AstKind::Mul(a, b) | AstKind::Div(a, b) => {
            max_var_index(a).max(max_var_index(b))
        }
        _ => 0,
    }
}

fn load_expression(path: &Path, n: Option<usize>) -> Result<(pdde_core::ExpPoly, usize), CliError> {
    let text = read_text(path)?;
    let trimmed = text.trim();
    let dim = match n {
        Some(d) if d > 0 => d,
        Some(_) => return Err(CliError::input("n must be positive")),
        None => {
            let ast = parse_ast(trimmed)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            max_var_index(&ast).max(1)
        }
    };
    let f = parse_exppoly(trimmed, dim)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok((f, dim))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify {
            system,
            params,
            f1,
            f2,
            samples,
            radius,
            tol,
            seed,
            out,
        } => {
            let file = read_params(&params)?;
            if let Some(expected) = &system {
                if expected != &file.system {
                    return Err(CliError::input(format!(
                        "--system {expected} does not match params file ({})",
                        file.system
                    )));
                }
            }
            let system_name = file.system.clone();
            let a_echo = file.a.clone();
            let c_echo = file.c.clone();
            let sys = file.into_system()?;
            let n = sys.dim();
            let (f1_text, f2_text) = (read_text(&f1)?, read_text(&f2)?);
            let f1 = parse_exppoly(f1_text.trim(), n)
                .map_err(|e| CliError::input(format!("f1: {e}")))?;
            let f2 = parse_exppoly(f2_text.trim(), n)
                .map_err(|e| CliError::input(format!("f2: {e}")))?;
            let opts = default_options(samples, radius, tol, seed);
            let rep = verify(&f1, &f2, &sys, &opts)
                .map_err(|e| CliError::input(e.to_string()))?;
            let json = VerifyReportJson {
                v: 1,
                command: "verify".into(),
                system: system_name,
                n,
                a: a_echo,
                c: c_echo,
                f1: print_exppoly(&f1),
                f2: print_exppoly(&f2),
                verification: VerificationJson::from_report(&rep),
            };
            emit(&json, &out)?;
            Ok(match rep.verdict {
                Verdict::Verified => 0,
                _ => 1,
            })
        }
        Command::Construct {
            theorem,
            params,
            samples,
            radius,
            tol,
            seed,
            out,
        } => {
            let text = read_text(&params)?;
            let mut file: TheoremFile = serde_json::from_str(&text)
                .map_err(|e| CliError::input(format!("{}: {e}", params.display())))?;
            if !theorem.eq_ignore_ascii_case(&file.theorem) {
                if pdde_core::theorems::TheoremId::parse(&theorem).is_none() {
                    return Err(CliError::input(format!("unknown theorem `{theorem}`")));
                }
                file.theorem = theorem.clone();
            }
            let label = file.theorem.to_ascii_uppercase();
            let tp = file.into_params()?;
            let opts = default_options(samples, radius, tol, seed);
            match construct_solution(&tp, &opts) {
                Ok(built) => {
                    emit(&ConstructReportJson::success(&label, &built), &out)?;
                    Ok(0)
                }
                Err(TheoremError::ConstraintsFailed { checks }) => {
                    let json = ConstructReportJson {
                        v: 1,
                        command: "construct".into(),
                        theorem: label,
                        checks: checks.iter().map(CheckJson::from_check).collect(),
                        warnings: vec![],
                        f1: None,
                        f2: None,
                        verification: None,
                        verdict: "CONSTRAINTS_FAILED".into(),
                    };
                    emit(&json, &out)?;
                    Ok(1)
                }
                Err(TheoremError::VerificationFailed { construction }) => {
                    let mut json = ConstructReportJson::success(&label, &construction);
                    json.verdict = construction.report.verdict.as_str().into();
                    emit(&json, &out)?;
                    Ok(1)
                }
                Err(e) => Err(CliError::input(e.to_string())),
            }
        }
        Command::Gate { m1, m2, n1, n2, out } => {
            let verdict =
                gate_nonexistence(m1, m2, n1, n2).map_err(|e| CliError::input(e.to_string()))?;
            emit(&GateReportJson::new(m1, m2, n1, n2, &verdict), &out)?;
            Ok(0)
        }
        Command::Order { expr, n, out } => {
            let (f, dim) = load_expression(&expr, n)?;
            let json = OrderReportJson {
                v: 1,
                command: "order".into(),
                n: dim,
                order: order_of_growth(&f),
            };
            emit(&json, &out)?;
            Ok(0)
        }
        Command::ParseCheck { expr, n, out } => {
            let (f, dim) = load_expression(&expr, n)?;
            let json = ParseCheckReportJson {
                v: 1,
                command: "parse-check".into(),
                n: dim,
                terms: f.term_count(),
                order: order_of_growth(&f),
                canonical: print_exppoly(&f),
            };
            emit(&json, &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit)
        }
    }
}
