//! Decision and construction layer: the nonexistence gate for the general
//! system, constraint-identity validators, auxiliary-pair solvers and the
//! eight solution constructors, each closed by a mandatory verifier
//! round-trip.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::analysis::AnalysisError;
use crate::scalar::{AlgebraError, Complex64};
use crate::systems::SystemError;

pub mod aux;
pub mod construct;
pub mod gate;
pub mod params;
pub mod sample;

pub use aux::{
    homogeneous_pair, solve_condition, solve_condition_extended, CondKind, ConditionInput,
    ConditionSolution, FrontRing,
};
pub use construct::{construct_solution, Construction};
pub use gate::{gate_nonexistence, GateKind, GateVerdict};
pub use params::{validate_constraints, AuxSpec, ConstraintCheck, TheoremId, TheoremParams};

/// The pair `gamma_1 = (a_{k+1} c_mu - i a) / (2a)`,
/// `gamma_2 = (a_{k+1} c_mu + i a) / (2a)`, where `a` is the coefficient
/// normalizing the derivative bracket (`a_1` for the second-order system,
/// `a_mu` for the directional system). Always `gamma_2 - gamma_1 = i` and
/// `gamma_1 + gamma_2 = a_{k+1} c_mu / a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaPair {
    pub gamma1: Complex64,
    pub gamma2: Complex64,
}

impl GammaPair {
    pub fn new(a_norm: Complex64, a_selected: Complex64, c_mu: Complex64) -> Self {
        let i = crate::scalar::I;
        let two_a = a_norm * crate::scalar::re(2.0);
        GammaPair {
            gamma1: (a_selected * c_mu - i * a_norm) / two_a,
            gamma2: (a_selected * c_mu + i * a_norm) / two_a,
        }
    }
}

#[derive(Clone, Debug)]
pub enum TheoremError {
    Algebra(AlgebraError),
    System(SystemError),
    Analysis(AnalysisError),
    BadParams(String),
    /// Some displayed identity of the selected theorem failed; the full
    /// check list is attached.
    ConstraintsFailed { checks: Vec<ConstraintCheck> },
    /// The auxiliary linear system has no solution in the admitted class.
    AuxiliaryInconsistent { label: String, defect: Complex64 },
    /// An auxiliary certificate did not reduce to zero (engine bug guard).
    CertificateFailed { label: String },
    /// The constructed pair did not verify; the construction is attached.
    VerificationFailed { construction: Box<Construction> },
}

impl From<AlgebraError> for TheoremError {
    fn from(e: AlgebraError) -> Self {
        TheoremError::Algebra(e)
    }
}

impl From<SystemError> for TheoremError {
    fn from(e: SystemError) -> Self {
        TheoremError::System(e)
    }
}

impl From<AnalysisError> for TheoremError {
    fn from(e: AnalysisError) -> Self {
        TheoremError::Analysis(e)
    }
}

impl core::fmt::Display for TheoremError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TheoremError::Algebra(e) => write!(f, "{e}"),
            TheoremError::System(e) => write!(f, "{e}"),
            TheoremError::Analysis(e) => write!(f, "{e}"),
            TheoremError::BadParams(m) => write!(f, "bad theorem parameters: {m}"),
            TheoremError::ConstraintsFailed { checks } => {
                let failed = checks.iter().filter(|c| !c.pass).count();
                write!(f, "constraint validation failed ({failed} identity/ies)")
            }
            TheoremError::AuxiliaryInconsistent { label, defect } => {
                write!(f, "auxiliary system `{label}` is inconsistent, defect {defect}")
            }
            TheoremError::CertificateFailed { label } => {
                write!(f, "auxiliary certificate `{label}` did not vanish")
            }
            TheoremError::VerificationFailed { construction } => write!(
                f,
                "constructed pair failed verification ({})",
                construction.report.verdict.as_str()
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{approx_eq, c, re, I};

    #[test]
    fn gamma_invariants() {
        let cases = [
            (c(1.0, 2.0), c(-3.0, 0.5), c(0.25, -1.0)),
            (I, re(-18.0), c(0.0, core::f64::consts::PI)),
            (re(2.0), re(3.0), crate::scalar::ZERO),
        ];
        for (a, sel, cmu) in cases {
            let g = GammaPair::new(a, sel, cmu);
            assert!(approx_eq(g.gamma2 - g.gamma1, I, 1e-12));
            assert!(approx_eq(g.gamma1 + g.gamma2, sel * cmu / a, 1e-12));
        }
    }
}
