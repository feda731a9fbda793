//! JSON reports. Field order is fixed by declaration, floats go through
//! serde_json's shortest round-trip formatting, and complex scalars are
//! rendered in the constant grammar, so identical inputs and seed produce
//! byte-identical reports.

use pdde_core::parse::print_complex;
use pdde_core::systems::{VerificationReport, VerifyOptions};
use pdde_core::theorems::{ConstraintCheck, Construction, GateVerdict};
use serde::Serialize;

#[derive(Serialize)]
pub struct EquationJson {
    pub symbolic_zero: bool,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub residual_term_count: usize,
    pub residual_terms: Vec<String>,
}

#[derive(Serialize)]
pub struct VerificationJson {
    pub samples: u32,
    pub radius: f64,
    pub tol: f64,
    pub seed: u64,
    pub extended_rounds: u32,
    pub equations: Vec<EquationJson>,
    pub verdict: String,
    pub note: Option<String>,
}

impl VerificationJson {
    pub fn from_report(r: &VerificationReport) -> Self {
        VerificationJson {
            samples: r.samples,
            radius: r.radius,
            tol: r.tol,
            seed: r.seed,
            extended_rounds: r.extended_rounds,
            equations: r
                .equations
                .iter()
                .map(|e| EquationJson {
                    symbolic_zero: e.symbolic_zero,
                    max_residual: e.max_residual,
                    mean_residual: e.mean_residual,
                    residual_term_count: e.residual_term_count,
                    residual_terms: e.residual_terms.clone(),
                })
                .collect(),
            verdict: r.verdict.as_str().to_string(),
            note: r.note.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct VerifyReportJson {
    pub v: u32,
    pub command: String,
    pub system: String,
    pub n: usize,
    pub a: Vec<String>,
    pub c: Vec<String>,
    pub f1: String,
    pub f2: String,
    #[serde(flatten)]
    pub verification: VerificationJson,
}

#[derive(Serialize)]
pub struct CheckJson {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl CheckJson {
    pub fn from_check(c: &ConstraintCheck) -> Self {
        CheckJson {
            label: c.label.clone(),
            lhs: print_complex(c.lhs),
            rhs: print_complex(c.rhs),
            pass: c.pass,
        }
    }
}

#[derive(Serialize)]
pub struct ConstructReportJson {
    pub v: u32,
    pub command: String,
    pub theorem: String,
    pub checks: Vec<CheckJson>,
    pub warnings: Vec<String>,
    pub f1: Option<String>,
    pub f2: Option<String>,
    pub verification: Option<VerificationJson>,
    pub verdict: String,
}

impl ConstructReportJson {
    pub fn success(theorem: &str, built: &Construction) -> Self {
        ConstructReportJson {
            v: 1,
            command: "construct".into(),
            theorem: theorem.into(),
            checks: built.checks.iter().map(CheckJson::from_check).collect(),
            warnings: built.warnings.clone(),
            f1: Some(pdde_core::parse::print_exppoly(&built.f1)),
            f2: Some(pdde_core::parse::print_exppoly(&built.f2)),
            verification: Some(VerificationJson::from_report(&built.report)),
            verdict: built.report.verdict.as_str().into(),
        }
    }
}

#[derive(Serialize)]
pub struct GateReportJson {
    pub v: u32,
    pub command: String,
    pub m1: u32,
    pub m2: u32,
    pub n1: u32,
    pub n2: u32,
    pub verdict: String,
    pub detail: String,
}

impl GateReportJson {
    pub fn new(m1: u32, m2: u32, n1: u32, n2: u32, verdict: &GateVerdict) -> Self {
        GateReportJson {
            v: 1,
            command: "gate".into(),
            m1,
            m2,
            n1,
            n2,
            verdict: verdict.kind.as_str().into(),
            detail: verdict.detail.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct OrderReportJson {
    pub v: u32,
    pub command: String,
    pub n: usize,
    pub order: u32,
}

#[derive(Serialize)]
pub struct ParseCheckReportJson {
    pub v: u32,
    pub command: String,
    pub n: usize,
    pub terms: usize,
    pub order: u32,
    pub canonical: String,
}

pub fn default_options(
    samples: Option<u32>,
    radius: Option<f64>,
    tol: Option<f64>,
    seed: Option<u64>,
) -> VerifyOptions {
    let mut opts = VerifyOptions::default();
    if let Some(s) = samples {
        opts.samples = s;
    }
    if let Some(r) = radius {
        opts.radius = r;
    }
    if let Some(t) = tol {
        opts.tol = t;
    }
    if let Some(s) = seed {
        opts.seed = s;
    }
    opts
}
