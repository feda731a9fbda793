//! Residual construction and verification for the three system families.
//!
//! Each system couples a pair `(f1, f2)` through derivatives and a shift:
//!
//! - `fg`:  `(F_{f1})^{m1} + P1 * f2^{n1}(z+c) = Q1` and the mirrored
//!   equation, where `F_f = sum_I a_I(z) * d^I f` is a general partial
//!   differential operator with unit orders 1..n;
//! - `e1`:  `(a1 df1/dz_mu)^2 + (a2 f1 + a3 f2(z+c) + a4 d^2f1/dz_mu^2)^2 = 1`
//!   and the mirror;
//! - `e4`:  `(sum_j a_j df1/dz_j)^2 + (a_{n+1} f1 + a_{n+2} f2(z+c))^2 = 1`
//!   and the mirror.
//!
//! `verify` decides a candidate pair twice: symbolically, by reducing each
//! residual to canonical form and testing it for zero, and numerically, by
//! evaluating the original un-expanded brackets at seeded random points.
//! The two paths must agree; disagreement is reported as `Inconsistent`
//! and signals an engine bug or a tolerance breach, never a mathematical
//! conclusion.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[allow(unused_imports)] // resolves f64 math in the no_std build
use num_traits::Float;
use rand_core::{RngCore, SeedableRng};

use crate::expoly::ExpPoly;
use crate::multi_index::MultiIndex;
use crate::scalar::{self, AlgebraError, Complex64};

#[derive(Clone, Debug, PartialEq)]
pub enum SystemError {
    Algebra(AlgebraError),
    InvalidParams(String),
}

impl From<AlgebraError> for SystemError {
    fn from(e: AlgebraError) -> Self {
        SystemError::Algebra(e)
    }
}

impl core::fmt::Display for SystemError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SystemError::Algebra(e) => write!(f, "{e}"),
            SystemError::InvalidParams(m) => write!(f, "invalid system parameters: {m}"),
        }
    }
}

/// `F_f = sum_I a_I(z) d^I f` with `|I| >= 1` for every entry.
#[derive(Clone, Debug)]
pub struct OperatorSpec {
    entries: Vec<(MultiIndex, ExpPoly)>,
}

impl OperatorSpec {
    pub fn new(entries: Vec<(MultiIndex, ExpPoly)>, dim: usize) -> Result<Self, SystemError> {
        if entries.is_empty() {
            return Err(SystemError::InvalidParams(
                "operator needs at least one entry".into(),
            ));
        }
        for (idx, coeff) in &entries {
            if idx.len() != dim || coeff.dim() != dim {
                return Err(SystemError::InvalidParams(format!(
                    "operator entry dimension mismatch (expected {dim})"
                )));
            }
            if idx.norm() == 0 {
                return Err(SystemError::InvalidParams(
                    "operator entries must have derivative order >= 1".into(),
                ));
            }
        }
        if entries.iter().all(|(_, c)| c.is_identically_zero()) {
            return Err(SystemError::InvalidParams(
                "operator coefficients must not all vanish".into(),
            ));
        }
        Ok(OperatorSpec { entries })
    }

    pub fn entries(&self) -> &[(MultiIndex, ExpPoly)] {
        &self.entries
    }

    /// First-order directional operator `sum_j a_j d/dz_j`.
    pub fn directional(a: &[Complex64], dim: usize) -> Result<Self, SystemError> {
        let mut entries = Vec::new();
        for (j, &w) in a.iter().enumerate() {
            if w != scalar::ZERO {
                entries.push((
                    MultiIndex::unit(dim, j),
                    ExpPoly::constant(dim, w).map_err(SystemError::Algebra)?,
                ));
            }
        }
        OperatorSpec::new(entries, dim)
    }
}

/// Apply `F_f = sum_I a_I d^I f`.
pub fn apply_operator(f: &ExpPoly, spec: &OperatorSpec) -> Result<ExpPoly, SystemError> {
    let mut acc = ExpPoly::zero(f.dim());
    for (idx, coeff) in spec.entries() {
        let d = f.derive_multi(idx)?;
        acc = acc.add(&coeff.mul(&d)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct FgParams {
    pub dim: usize,
    pub c: Vec<Complex64>,
    /// Outer powers `(m1, m2)` of the differential brackets.
    pub m: [u32; 2],
    /// Shift powers `(n1, n2)`.
    pub n_pow: [u32; 2],
    pub p: [ExpPoly; 2],
    pub q: [ExpPoly; 2],
    pub op: [OperatorSpec; 2],
}

#[derive(Clone, Debug)]
pub struct E1Params {
    pub dim: usize,
    pub c: Vec<Complex64>,
    /// 0-based derivative direction `mu`.
    pub mu: usize,
    /// `(a1, a2, a3, a4)`; `a4 = 0` is accepted as an engine generalization.
    pub a: [Complex64; 4],
}

#[derive(Clone, Debug)]
pub struct E4Params {
    pub dim: usize,
    pub c: Vec<Complex64>,
    /// `a_1..a_n` then `a_{n+1}, a_{n+2}`; all nonzero.
    pub a: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub enum SystemParams {
    Fg(FgParams),
    E1(E1Params),
    E4(E4Params),
}

fn require_nonzero_shift(c: &[Complex64]) -> Result<(), SystemError> {
    if c.iter().all(|w| *w == scalar::ZERO) {
        return Err(SystemError::InvalidParams(
            "the shift c must not be the zero vector".into(),
        ));
    }
    Ok(())
}

impl SystemParams {
    pub fn dim(&self) -> usize {
        match self {
            SystemParams::Fg(p) => p.dim,
            SystemParams::E1(p) => p.dim,
            SystemParams::E4(p) => p.dim,
        }
    }

    pub fn shift(&self) -> &[Complex64] {
        match self {
            SystemParams::Fg(p) => &p.c,
            SystemParams::E1(p) => &p.c,
            SystemParams::E4(p) => &p.c,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SystemParams::Fg(_) => "fg",
            SystemParams::E1(_) => "e1",
            SystemParams::E4(_) => "e4",
        }
    }

    pub fn validate(&self) -> Result<(), SystemError> {
        match self {
            SystemParams::Fg(p) => {
                if p.c.len() != p.dim {
                    return Err(SystemError::InvalidParams("shift length != n".into()));
                }
                require_nonzero_shift(&p.c)?;
                if p.m.iter().chain(p.n_pow.iter()).any(|&k| k == 0) {
                    return Err(SystemError::InvalidParams(
                        "powers m_j, n_j must be positive".into(),
                    ));
                }
                for g in p.p.iter().chain(p.q.iter()) {
                    if g.dim() != p.dim {
                        return Err(SystemError::InvalidParams("P/Q dimension mismatch".into()));
                    }
                    if g.is_identically_zero() {
                        return Err(SystemError::InvalidParams(
                            "P_i and Q_i must not vanish identically".into(),
                        ));
                    }
                }
                Ok(())
            }
            SystemParams::E1(p) => {
                if p.c.len() != p.dim {
                    return Err(SystemError::InvalidParams("shift length != n".into()));
                }
                require_nonzero_shift(&p.c)?;
                if p.mu >= p.dim {
                    return Err(SystemError::InvalidParams("mu out of range".into()));
                }
                if p.a[..3].contains(&scalar::ZERO) {
                    return Err(SystemError::InvalidParams(
                        "a1, a2, a3 must be nonzero".into(),
                    ));
                }
                Ok(())
            }
            SystemParams::E4(p) => {
                if p.c.len() != p.dim {
                    return Err(SystemError::InvalidParams("shift length != n".into()));
                }
                require_nonzero_shift(&p.c)?;
                if p.a.len() != p.dim + 2 {
                    return Err(SystemError::InvalidParams(
                        "e4 needs n + 2 coefficients".into(),
                    ));
                }
                if p.a.contains(&scalar::ZERO) {
                    return Err(SystemError::InvalidParams(
                        "all a_j must be nonzero".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

/// Residuals of system `e1`; equation j uses `(f_j, f_k)` with `k != j`.
pub fn residual_e1(
    f1: &ExpPoly,
    f2: &ExpPoly,
    p: &E1Params,
) -> Result<(ExpPoly, ExpPoly), SystemError> {
    let one = ExpPoly::one(p.dim)?;
    let eq = |fj: &ExpPoly, fk: &ExpPoly| -> Result<ExpPoly, SystemError> {
        let d1 = fj.partial_derivative(p.mu)?;
        let d2 = d1.partial_derivative(p.mu)?;
        let first = d1.scale(p.a[0]);
        let bracket = fj
            .scale(p.a[1])
            .add(&fk.shift(&p.c)?.scale(p.a[2]))?
            .add(&d2.scale(p.a[3]))?;
        Ok(first.pow(2)?.add(&bracket.pow(2)?)?.sub(&one)?)
    };
    Ok((eq(f1, f2)?, eq(f2, f1)?))
}

/// Residuals of system `e4`.
pub fn residual_e4(
    f1: &ExpPoly,
    f2: &ExpPoly,
    p: &E4Params,
) -> Result<(ExpPoly, ExpPoly), SystemError> {
    let n = p.dim;
    let one = ExpPoly::one(n)?;
    let eq = |fj: &ExpPoly, fk: &ExpPoly| -> Result<ExpPoly, SystemError> {
        let mut directional = ExpPoly::zero(n);
        for j in 0..n {
            directional = directional.add(&fj.partial_derivative(j)?.scale(p.a[j]))?;
        }
        let bracket = fj
            .scale(p.a[n])
            .add(&fk.shift(&p.c)?.scale(p.a[n + 1]))?;
        Ok(directional.pow(2)?.add(&bracket.pow(2)?)?.sub(&one)?)
    };
    Ok((eq(f1, f2)?, eq(f2, f1)?))
}

/// Residuals of system `fg`.
pub fn residual_fg(
    f1: &ExpPoly,
    f2: &ExpPoly,
    p: &FgParams,
) -> Result<(ExpPoly, ExpPoly), SystemError> {
    let eq = |j: usize, fj: &ExpPoly, fk: &ExpPoly| -> Result<ExpPoly, SystemError> {
        let bracket = apply_operator(fj, &p.op[j])?;
        let shifted = fk.shift(&p.c)?.pow(p.n_pow[j])?;
        Ok(bracket
            .pow(p.m[j])?
            .add(&p.p[j].mul(&shifted)?)?
            .sub(&p.q[j])?)
    };
    Ok((eq(0, f1, f2)?, eq(1, f2, f1)?))
}

/// Symbolic residuals of the system for `(f1, f2)`.
pub fn residuals(
    f1: &ExpPoly,
    f2: &ExpPoly,
    params: &SystemParams,
) -> Result<(ExpPoly, ExpPoly), SystemError> {
    match params {
        SystemParams::Fg(p) => residual_fg(f1, f2, p),
        SystemParams::E1(p) => residual_e1(f1, f2, p),
        SystemParams::E4(p) => residual_e4(f1, f2, p),
    }
}

// ---------------------------------------------------------------------------
// Verification

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub samples: u32,
    pub radius: f64,
    pub tol: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 128,
            radius: 2.0,
            tol: 1e-9,
            seed: 42,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    Inconsistent,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Verified => "VERIFIED",
            Verdict::Refuted => "REFUTED",
            Verdict::Inconsistent => "INCONSISTENT",
        }
    }
}

#[derive(Clone, Debug)]
pub struct EquationReport {
    pub symbolic_zero: bool,
    /// Max over samples of `|residual| / (1 + bracket scale)`, where the
    /// scale is built from the summand magnitudes of the evaluated
    /// brackets.
    pub max_residual: f64,
    pub mean_residual: f64,
    /// Leading terms of the symbolic residual, for diagnosis.
    pub residual_terms: Vec<String>,
    pub residual_term_count: usize,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub equations: [EquationReport; 2],
    pub verdict: Verdict,
    pub samples: u32,
    pub radius: f64,
    pub tol: f64,
    pub seed: u64,
    /// Extra sampling rounds spent confirming a symbolic refutation.
    pub extended_rounds: u32,
    pub note: Option<String>,
}

/// Uniform f64 in [0, 1) from the top 53 bits of a ChaCha word.
fn unit_f64(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// One pseudo-random point: each coordinate has modulus uniform in
/// [0, radius] and angle uniform in [0, 2 pi).
fn sample_point(rng: &mut rand_chacha::ChaCha8Rng, dim: usize, radius: f64) -> Vec<Complex64> {
    (0..dim)
        .map(|_| {
            let r = radius * unit_f64(rng);
            let theta = 2.0 * core::f64::consts::PI * unit_f64(rng);
            scalar::c(r * theta.cos(), r * theta.sin())
        })
        .collect()
}

/// Pointwise residual and bracket scale of one equation, computed from the
/// original un-expanded equation pieces.
struct NumericEquation<'a> {
    params: &'a SystemParams,
    /// Which equation: 0 or 1.
    j: usize,
    fj: &'a ExpPoly,
    fk: &'a ExpPoly,
    /// Symbolic derivatives of `fj`, prepared once.
    derivatives: Vec<ExpPoly>,
}

impl<'a> NumericEquation<'a> {
    fn prepare(
        params: &'a SystemParams,
        j: usize,
        fj: &'a ExpPoly,
        fk: &'a ExpPoly,
    ) -> Result<Self, SystemError> {
        let derivatives = match params {
            SystemParams::E1(p) => {
                let d1 = fj.partial_derivative(p.mu)?;
                let d2 = d1.partial_derivative(p.mu)?;
                alloc::vec![d1, d2]
            }
            SystemParams::E4(p) => (0..p.dim)
                .map(|k| fj.partial_derivative(k))
                .collect::<Result<Vec<_>, _>>()?,
            SystemParams::Fg(p) => p.op[j]
                .entries()
                .iter()
                .map(|(idx, _)| fj.derive_multi(idx))
                .collect::<Result<Vec<_>, _>>()?,
        };
        Ok(NumericEquation {
            params,
            j,
            fj,
            fk,
            derivatives,
        })
    }

    /// Returns `(|residual|, scale)` at `z`. The scale is built from the
    /// summand magnitudes of each evaluated bracket, so it bounds the
    /// precision actually achievable by the pointwise computation;
    /// residuals are compared against `tol * (1 + scale)`.
    fn residual_at(&self, z: &[Complex64]) -> Result<(f64, f64), AlgebraError> {
        let shifted: Vec<Complex64> = z
            .iter()
            .zip(self.params.shift().iter())
            .map(|(a, b)| a + b)
            .collect();
        match self.params {
            SystemParams::E1(p) => {
                let (d1, d1s) = self.derivatives[0].evaluate_with_scale(z)?;
                let (d2, d2s) = self.derivatives[1].evaluate_with_scale(z)?;
                let (fj, fjs) = self.fj.evaluate_with_scale(z)?;
                let (fk, fks) = self.fk.evaluate_with_scale(&shifted)?;
                let u = p.a[0] * d1;
                let v = p.a[1] * fj + p.a[2] * fk + p.a[3] * d2;
                let u_scale = p.a[0].norm() * d1s;
                let v_scale =
                    p.a[1].norm() * fjs + p.a[2].norm() * fks + p.a[3].norm() * d2s;
                let resid = u * u + v * v - scalar::ONE;
                let scale = (u_scale * u_scale).max(v_scale * v_scale).max(1.0);
                finite_residual(resid, scale)
            }
            SystemParams::E4(p) => {
                let n = p.dim;
                let mut u = scalar::ZERO;
                let mut u_scale = 0.0f64;
                for k in 0..n {
                    let (d, ds) = self.derivatives[k].evaluate_with_scale(z)?;
                    u += p.a[k] * d;
                    u_scale += p.a[k].norm() * ds;
                }
                let (fj, fjs) = self.fj.evaluate_with_scale(z)?;
                let (fk, fks) = self.fk.evaluate_with_scale(&shifted)?;
                let v = p.a[n] * fj + p.a[n + 1] * fk;
                let v_scale = p.a[n].norm() * fjs + p.a[n + 1].norm() * fks;
                let resid = u * u + v * v - scalar::ONE;
                let scale = (u_scale * u_scale).max(v_scale * v_scale).max(1.0);
                finite_residual(resid, scale)
            }
            SystemParams::Fg(p) => {
                let mut bracket = scalar::ZERO;
                let mut bracket_scale = 0.0f64;
                for ((_, coeff), d) in p.op[self.j].entries().iter().zip(&self.derivatives) {
                    let (cv, cs) = coeff.evaluate_with_scale(z)?;
                    let (dv, ds) = d.evaluate_with_scale(z)?;
                    bracket += cv * dv;
                    bracket_scale += cs * ds;
                }
                let m = p.m[self.j];
                let powered = bracket.powu(m);
                let powered_scale = bracket_scale.powi(m as i32);
                let (pv, ps) = p.p[self.j].evaluate_with_scale(z)?;
                let (fk, fks) = self.fk.evaluate_with_scale(&shifted)?;
                let shift_part = pv * fk.powu(p.n_pow[self.j]);
                let shift_scale = ps * fks.powi(p.n_pow[self.j] as i32);
                let (rhs, rhs_scale) = p.q[self.j].evaluate_with_scale(z)?;
                let resid = powered + shift_part - rhs;
                let scale = powered_scale.max(shift_scale).max(rhs_scale).max(1.0);
                finite_residual(resid, scale)
            }
        }
    }
}

fn finite_residual(resid: Complex64, scale: f64) -> Result<(f64, f64), AlgebraError> {
    if !scalar::is_finite(resid) || !scale.is_finite() {
        return Err(AlgebraError::NonFiniteValue);
    }
    Ok((resid.norm(), scale))
}

fn leading_terms(residual: &ExpPoly, limit: usize) -> Vec<String> {
    let mut described: Vec<(f64, String)> = residual
        .terms()
        .iter()
        .map(|t| {
            (
                t.front.max_coeff_mag(),
                format!(
                    "({})*exp({})",
                    crate::parse::print_polynomial(&t.front),
                    crate::parse::print_polynomial(&t.exponent)
                ),
            )
        })
        .collect();
    described.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(core::cmp::Ordering::Equal));
    described.into_iter().take(limit).map(|(_, s)| s).collect()
}

/// Decide whether `(f1, f2)` solves the system, by independent symbolic and
/// numeric routes. Deterministic given the seed.
pub fn verify(
    f1: &ExpPoly,
    f2: &ExpPoly,
    params: &SystemParams,
    opts: &VerifyOptions,
) -> Result<VerificationReport, SystemError> {
    params.validate()?;
    let dim = params.dim();
    if f1.dim() != dim || f2.dim() != dim {
        return Err(SystemError::InvalidParams(format!(
            "candidate dimension mismatch (system has n = {dim})"
        )));
    }

    let (r1, r2) = residuals(f1, f2, params)?;
    let symbolic = [r1, r2];

    let numeric = [
        NumericEquation::prepare(params, 0, f1, f2)?,
        NumericEquation::prepare(params, 1, f2, f1)?,
    ];

    let mut reports: Vec<EquationReport> = symbolic
        .iter()
        .map(|r| EquationReport {
            symbolic_zero: r.is_identically_zero(),
            max_residual: 0.0,
            mean_residual: 0.0,
            residual_terms: leading_terms(r, 4),
            residual_term_count: r.term_count(),
        })
        .collect();

    let mut note: Option<String> = None;
    let mut extended_rounds = 0u32;

    // base round; on a symbolic/numeric disagreement of the kind
    // "symbolically nonzero but numerically small", extend the sampling
    // before concluding
    let mut samples = opts.samples.max(1);
    let mut radius = opts.radius;
    let mut round = 0u32;
    loop {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(round as u64));
        let mut max = [0.0f64; 2];
        let mut sum = [0.0f64; 2];
        let mut overflow: Option<String> = None;
        'sampling: for _ in 0..samples {
            let z = sample_point(&mut rng, dim, radius);
            for (eq, m) in numeric.iter().zip(0..2) {
                match eq.residual_at(&z) {
                    Ok((resid, scale)) => {
                        let normalized = resid / (1.0 + scale);
                        max[m] = max[m].max(normalized);
                        sum[m] += normalized;
                    }
                    Err(e) => {
                        overflow = Some(format!("numeric evaluation failed: {e}"));
                        break 'sampling;
                    }
                }
            }
        }

        if let Some(msg) = overflow {
            for r in reports.iter_mut() {
                r.max_residual = f64::NAN;
                r.mean_residual = f64::NAN;
            }
            return Ok(VerificationReport {
                equations: [reports[0].clone(), reports[1].clone()],
                verdict: Verdict::Inconsistent,
                samples,
                radius,
                tol: opts.tol,
                seed: opts.seed,
                extended_rounds,
                note: Some(msg),
            });
        }

        for m in 0..2 {
            reports[m].max_residual = max[m];
            reports[m].mean_residual = sum[m] / samples as f64;
        }

        let disagree_small = (0..2).any(|m| !reports[m].symbolic_zero && max[m] <= opts.tol);
        if disagree_small && round < 2 {
            // a nonzero residual may vanish on a thin set or be tiny inside
            // the sampled disk; look harder before declaring inconsistency
            round += 1;
            extended_rounds += 1;
            samples = samples.saturating_mul(4);
            radius *= 1.25;
            continue;
        }
        break;
    }

    let mut verdict = Verdict::Verified;
    for r in reports.iter() {
        let numeric_zero = r.max_residual <= opts.tol;
        match (r.symbolic_zero, numeric_zero) {
            (true, true) => {}
            (false, false) => {
                if verdict == Verdict::Verified {
                    verdict = Verdict::Refuted;
                }
            }
            (true, false) | (false, true) => {
                verdict = Verdict::Inconsistent;
                note = Some(
                    "symbolic and numeric paths disagree; engine bug or tolerance breach"
                        .to_string(),
                );
            }
        }
    }

    Ok(VerificationReport {
        equations: [reports[0].clone(), reports[1].clone()],
        verdict,
        samples,
        radius,
        tol: opts.tol,
        seed: opts.seed,
        extended_rounds,
        note,
    })
}

/// Sampling-only zero check used by tests as an oracle independent of the
/// canonical-form path: true if `|f| <= tol * (1 + |largest term|)` at every
/// sampled point, extending the sampling adaptively before accepting.
pub fn numeric_zero_check(
    f: &ExpPoly,
    samples: u32,
    radius: f64,
    seed: u64,
    tol: f64,
) -> Result<bool, AlgebraError> {
    let mut samples = samples.max(1);
    let mut radius = radius;
    for round in 0..3u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(round));
        for _ in 0..samples {
            let z = sample_point(&mut rng, f.dim(), radius);
            let value = f.evaluate(&z)?;
            let mut scale = 1.0f64;
            for t in f.terms() {
                let q = t.front.evaluate(&z)?;
                let p = t.exponent.evaluate(&z)?;
                scale = scale.max((q * crate::scalar::cexp(p)?).norm());
            }
            if value.norm() > tol * scale {
                return Ok(false);
            }
        }
        samples = samples.saturating_mul(2);
        radius *= 1.2;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::scalar::{re, I, ZERO};

    fn exp_of_linear(coeffs: &[f64]) -> ExpPoly {
        let c: Vec<Complex64> = coeffs.iter().map(|&x| re(x)).collect();
        ExpPoly::exp_of(Polynomial::linear(&c)).unwrap()
    }

    #[test]
    fn apply_first_order_operator() {
        // spec {(1,0) -> 1} applied to e^{2 z1} gives 2 e^{2 z1}
        let spec = OperatorSpec::new(
            alloc::vec![(MultiIndex::new(alloc::vec![1, 0]), ExpPoly::one(2).unwrap())],
            2,
        )
        .unwrap();
        let f = exp_of_linear(&[2.0, 0.0]);
        let out = apply_operator(&f, &spec).unwrap();
        assert!(out.equals(&f.scale(re(2.0))).unwrap());
    }

    #[test]
    fn apply_mixed_operator() {
        // spec {(1,0) -> z2, (0,2) -> 1} applied to z1 z2^2 gives z2^3 + 2 z1
        let z1 = ExpPoly::variable(2, 0).unwrap();
        let z2 = ExpPoly::variable(2, 1).unwrap();
        let f = z1.mul(&z2.pow(2).unwrap()).unwrap();
        let spec = OperatorSpec::new(
            alloc::vec![
                (MultiIndex::new(alloc::vec![1, 0]), z2.clone()),
                (MultiIndex::new(alloc::vec![0, 2]), ExpPoly::one(2).unwrap()),
            ],
            2,
        )
        .unwrap();
        let out = apply_operator(&f, &spec).unwrap();
        let expected = z2.pow(3).unwrap().add(&z1.scale(re(2.0))).unwrap();
        assert!(out.equals(&expected).unwrap());
    }

    #[test]
    fn e1_zero_candidates_give_minus_one() {
        let p = E1Params {
            dim: 2,
            c: alloc::vec![re(1.0), ZERO],
            mu: 0,
            a: [re(1.0), re(1.0), re(1.0), re(1.0)],
        };
        let zero = ExpPoly::zero(2);
        let (r1, r2) = residual_e1(&zero, &zero, &p).unwrap();
        let minus_one = ExpPoly::constant(2, re(-1.0)).unwrap();
        assert!(r1.equals(&minus_one).unwrap());
        assert!(r2.equals(&minus_one).unwrap());
    }

    #[test]
    fn e1_linear_pair_with_zero_shift_component() {
        // n=2, mu=1 (z1), c=(0,1), a=(1,1,-1,1), f1=f2=z1: residual (0,0)
        let p = E1Params {
            dim: 2,
            c: alloc::vec![ZERO, re(1.0)],
            mu: 0,
            a: [re(1.0), re(1.0), re(-1.0), re(1.0)],
        };
        let f = ExpPoly::variable(2, 0).unwrap();
        let (r1, r2) = residual_e1(&f, &f, &p).unwrap();
        assert!(r1.is_identically_zero());
        assert!(r2.is_identically_zero());
    }

    #[test]
    fn e1_difference_shape_matches_hand_check() {
        // a4 = 0, a = (1, -1, 1): equation shape of the difference system
        let p = E1Params {
            dim: 2,
            c: alloc::vec![ZERO, re(1.0)],
            mu: 0,
            a: [re(1.0), re(-1.0), re(1.0), ZERO],
        };
        let f = ExpPoly::variable(2, 0).unwrap();
        let (r1, r2) = residual_e1(&f, &f, &p).unwrap();
        assert!(r1.is_identically_zero());
        assert!(r2.is_identically_zero());
    }

    #[test]
    fn e4_zero_candidates_give_minus_one() {
        let p = E4Params {
            dim: 2,
            c: alloc::vec![re(1.0), re(-1.0)],
            a: alloc::vec![re(1.0), re(1.0), re(1.0), re(-1.0)],
        };
        let zero = ExpPoly::zero(2);
        let (r1, r2) = residual_e4(&zero, &zero, &p).unwrap();
        let minus_one = ExpPoly::constant(2, re(-1.0)).unwrap();
        assert!(r1.equals(&minus_one).unwrap());
        assert!(r2.equals(&minus_one).unwrap());
    }

    #[test]
    fn e4_half_difference_pair() {
        // n=2, a=(1,1), a3=1, a4=-1, c=(1,-1), f1=f2=(z1-z2)/2:
        // directional derivative 0, bracket -1, residual (0, 0)
        let p = E4Params {
            dim: 2,
            c: alloc::vec![re(1.0), re(-1.0)],
            a: alloc::vec![re(1.0), re(1.0), re(1.0), re(-1.0)],
        };
        let z1 = ExpPoly::variable(2, 0).unwrap();
        let z2 = ExpPoly::variable(2, 1).unwrap();
        let f = z1.sub(&z2).unwrap().scale(re(0.5));
        let (r1, r2) = residual_e4(&f, &f, &p).unwrap();
        assert!(r1.is_identically_zero());
        assert!(r2.is_identically_zero());
    }

    #[test]
    fn fg_sine_pair_satisfies_pythagorean_identity() {
        // F = d/dz1, m = n = 2, P = Q = 1, f = sin(z1) as
        // (e^{i z1} - e^{-i z1}) / (2i), c = (2 pi, 0)
        let dim = 2;
        let iz1 = Polynomial::linear(&[I, ZERO]);
        let sin = ExpPoly::exp_of(iz1.clone())
            .unwrap()
            .sub(&ExpPoly::exp_of(iz1.neg()).unwrap())
            .unwrap()
            .scale(scalar::ONE / (re(2.0) * I));
        let op = OperatorSpec::new(
            alloc::vec![(MultiIndex::new(alloc::vec![1, 0]), ExpPoly::one(dim).unwrap())],
            dim,
        )
        .unwrap();
        let one = ExpPoly::one(dim).unwrap();
        let p = FgParams {
            dim,
            c: alloc::vec![re(2.0 * core::f64::consts::PI), ZERO],
            m: [2, 2],
            n_pow: [2, 2],
            p: [one.clone(), one.clone()],
            q: [one.clone(), one.clone()],
            op: [op.clone(), op],
        };
        let (r1, r2) = residual_fg(&sin, &sin, &p).unwrap();
        assert!(r1.is_identically_zero(), "cos^2 + sin^2 - 1 should vanish");
        assert!(r2.is_identically_zero());
    }

    #[test]
    fn fg_zero_candidates() {
        let dim = 2;
        let op = OperatorSpec::new(
            alloc::vec![(MultiIndex::new(alloc::vec![1, 0]), ExpPoly::one(dim).unwrap())],
            dim,
        )
        .unwrap();
        let one = ExpPoly::one(dim).unwrap();
        let p = FgParams {
            dim,
            c: alloc::vec![re(1.0), ZERO],
            m: [2, 2],
            n_pow: [2, 2],
            p: [one.clone(), one.clone()],
            q: [one.clone(), one.clone()],
            op: [op.clone(), op],
        };
        let zero = ExpPoly::zero(dim);
        let (r1, r2) = residual_fg(&zero, &zero, &p).unwrap();
        let minus_one = ExpPoly::constant(dim, re(-1.0)).unwrap();
        assert!(r1.equals(&minus_one).unwrap());
        assert!(r2.equals(&minus_one).unwrap());
    }

    #[test]
    fn fg_linear_case_with_polynomial_target() {
        // m1 = n1 = 1, F = d/dz1, P1 = 1, Q1 = z2, f1 = z1 z2, f2 = 0:
        // equation-1 residual z2 + 0 - z2 = 0
        let dim = 2;
        let op = OperatorSpec::new(
            alloc::vec![(MultiIndex::new(alloc::vec![1, 0]), ExpPoly::one(dim).unwrap())],
            dim,
        )
        .unwrap();
        let one = ExpPoly::one(dim).unwrap();
        let z2 = ExpPoly::variable(dim, 1).unwrap();
        let p = FgParams {
            dim,
            c: alloc::vec![re(1.0), ZERO],
            m: [1, 1],
            n_pow: [1, 1],
            p: [one.clone(), one.clone()],
            q: [z2.clone(), one.clone()],
            op: [op.clone(), op],
        };
        let f1 = ExpPoly::variable(dim, 0).unwrap().mul(&z2).unwrap();
        let f2 = ExpPoly::zero(dim);
        let (r1, _) = residual_fg(&f1, &f2, &p).unwrap();
        assert!(r1.is_identically_zero());
    }

    #[test]
    fn verify_refutes_zero_pair() {
        let p = SystemParams::E1(E1Params {
            dim: 2,
            c: alloc::vec![re(1.0), ZERO],
            mu: 0,
            a: [re(1.0), re(1.0), re(1.0), re(1.0)],
        });
        let zero = ExpPoly::zero(2);
        let report = verify(&zero, &zero, &p, &VerifyOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Refuted);
        // residual is the constant -1; normalized against scale 1 + 1
        assert!((report.equations[0].max_residual - 0.5).abs() < 1e-12);
    }

    #[test]
    fn verify_is_deterministic() {
        let p = SystemParams::E1(E1Params {
            dim: 2,
            c: alloc::vec![ZERO, re(1.0)],
            mu: 0,
            a: [re(1.0), re(1.0), re(-1.0), re(1.0)],
        });
        let f = ExpPoly::variable(2, 0).unwrap();
        let r1 = verify(&f, &f, &p, &VerifyOptions::default()).unwrap();
        let r2 = verify(&f, &f, &p, &VerifyOptions::default()).unwrap();
        assert_eq!(r1.verdict, Verdict::Verified);
        assert_eq!(r1.equations[0].max_residual, r2.equations[0].max_residual);
        assert_eq!(r1.equations[1].mean_residual, r2.equations[1].mean_residual);
    }

    #[test]
    fn residuals_are_swap_equivariant() {
        let p = E1Params {
            dim: 2,
            c: alloc::vec![re(0.5), re(1.0)],
            mu: 0,
            a: [re(1.0), re(2.0), re(-1.0), re(0.5)],
        };
        let f = exp_of_linear(&[1.0, -1.0]);
        let g = ExpPoly::variable(2, 1).unwrap();
        let (r1, r2) = residual_e1(&f, &g, &p).unwrap();
        let (s1, s2) = residual_e1(&g, &f, &p).unwrap();
        assert!(r1.equals(&s2).unwrap());
        assert!(r2.equals(&s1).unwrap());
    }
}
