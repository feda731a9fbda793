//! Theorem parameter bundles and the constraint-identity validator.
//!
//! `validate_constraints` evaluates every displayed identity of the selected
//! theorem as a complex equality with tolerance `1e-9 * (1 + scale)` and
//! returns the full list; failures are data, not errors. Construction
//! requires every entry to pass.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::analysis::LinearForm;
use crate::poly::Polynomial;
use crate::scalar::{self, approx_eq, cexp, Complex64};
use crate::systems::{E1Params, E4Params, SystemParams};

use super::TheoremError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    T1,
    T11,
    T12,
    T13,
    T2,
    T22,
    T23,
    T24,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::T1,
        TheoremId::T11,
        TheoremId::T12,
        TheoremId::T13,
        TheoremId::T2,
        TheoremId::T22,
        TheoremId::T23,
        TheoremId::T24,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::T1 => "T1",
            TheoremId::T11 => "T11",
            TheoremId::T12 => "T12",
            TheoremId::T13 => "T13",
            TheoremId::T2 => "T2",
            TheoremId::T22 => "T22",
            TheoremId::T23 => "T23",
            TheoremId::T24 => "T24",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Some(TheoremId::T1),
            "T11" => Some(TheoremId::T11),
            "T12" => Some(TheoremId::T12),
            "T13" => Some(TheoremId::T13),
            "T2" => Some(TheoremId::T2),
            "T22" => Some(TheoremId::T22),
            "T23" => Some(TheoremId::T23),
            "T24" => Some(TheoremId::T24),
            _ => None,
        }
    }

    /// True for the second-order-derivative family (system e1).
    pub fn is_e1_family(&self) -> bool {
        matches!(
            self,
            TheoremId::T1 | TheoremId::T11 | TheoremId::T12 | TheoremId::T13
        )
    }
}

/// How the auxiliary parts are supplied.
#[derive(Clone, Debug)]
pub enum AuxSpec {
    /// Zero auxiliary parts (legal where the identities are homogeneous).
    Zero,
    /// Periodic pieces `sum coeff * e^{L}` for the first-order theorems.
    Periodic(Vec<(LinearForm, Complex64)>),
    /// Single-exponential homogeneous pair `tau * e^{M}` and its partner.
    Homogeneous { m: LinearForm, tau: Complex64 },
    /// Solve the displayed inhomogeneous identities.
    Solve,
}

#[derive(Clone, Debug)]
pub struct TheoremParams {
    pub id: TheoremId,
    pub system: SystemParams,
    /// 0-based distinguished index for the directional family (mirrors the
    /// system's `mu` for the e1 family).
    pub mu: usize,
    /// Exponent direction `b` (length n); unused by T1/T2.
    pub b: Vec<Complex64>,
    pub big_a: Complex64,
    pub big_b: Complex64,
    pub k: [Complex64; 4],
    /// Case selector 1 or 2 for T13/T23/T24.
    pub nu: u8,
    /// Shift-invariant polynomial exponent piece (condition (A) family).
    pub psi1: Option<Polynomial>,
    pub aux: AuxSpec,
}

impl TheoremParams {
    pub fn e1(&self) -> Result<&E1Params, TheoremError> {
        match &self.system {
            SystemParams::E1(p) => Ok(p),
            _ => Err(TheoremError::BadParams(format!(
                "theorem {} needs system e1",
                self.id.as_str()
            ))),
        }
    }

    pub fn e4(&self) -> Result<&E4Params, TheoremError> {
        match &self.system {
            SystemParams::E4(p) => Ok(p),
            _ => Err(TheoremError::BadParams(format!(
                "theorem {} needs system e4",
                self.id.as_str()
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintCheck {
    pub label: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub pass: bool,
}

fn eq(label: impl Into<String>, lhs: Complex64, rhs: Complex64) -> ConstraintCheck {
    ConstraintCheck {
        label: label.into(),
        lhs,
        rhs,
        pass: approx_eq(lhs, rhs, 1e-9),
    }
}

fn ne(label: impl Into<String>, lhs: Complex64, rhs: Complex64) -> ConstraintCheck {
    ConstraintCheck {
        label: label.into(),
        lhs,
        rhs,
        pass: !approx_eq(lhs, rhs, 1e-9),
    }
}

fn either_sign(label: impl Into<String>, lhs: Complex64, rhs: Complex64) -> ConstraintCheck {
    ConstraintCheck {
        label: label.into(),
        lhs,
        rhs,
        pass: approx_eq(lhs, rhs, 1e-9) || approx_eq(lhs, -rhs, 1e-9),
    }
}

fn boolean(label: impl Into<String>, pass: bool) -> ConstraintCheck {
    ConstraintCheck {
        label: label.into(),
        lhs: scalar::ZERO,
        rhs: scalar::ZERO,
        pass,
    }
}

fn k_product_checks(k: &[Complex64; 4], out: &mut Vec<ConstraintCheck>) {
    out.push(eq("K1*K2 = 1", k[0] * k[1], scalar::ONE));
    out.push(eq("K3*K4 = 1", k[2] * k[3], scalar::ONE));
}

fn psi_checks(
    psi: &Option<Polynomial>,
    mu: usize,
    c: &[Complex64],
    out: &mut Vec<ConstraintCheck>,
) -> Result<(), TheoremError> {
    if let Some(p) = psi {
        out.push(boolean("Psi1 contains no z_mu", p.is_free_of(mu)));
        let moved = p.shift(c).map_err(TheoremError::Algebra)?;
        let diff = moved.sub(p).map_err(TheoremError::Algebra)?;
        out.push(boolean(
            "Psi1(z+c) = Psi1(z)",
            diff.max_coeff_mag() <= 1e-9 * (1.0 + p.max_coeff_mag()),
        ));
        out.push(boolean("Psi1 has degree >= 2 or is zero", p.is_zero() || p.degree() >= 2));
    }
    Ok(())
}

/// `sum_j b_j c_j` over all coordinates.
fn pair_full(b: &[Complex64], c: &[Complex64]) -> Complex64 {
    b.iter().zip(c.iter()).map(|(x, y)| x * y).sum()
}

/// `sum_{j != mu} b_j c_j`.
fn pair_skip(b: &[Complex64], c: &[Complex64], mu: usize) -> Complex64 {
    b.iter()
        .zip(c.iter())
        .enumerate()
        .filter(|(j, _)| *j != mu)
        .map(|(_, (x, y))| x * y)
        .sum()
}

fn sign_nu(nu: u8) -> Complex64 {
    // (-1)^nu
    if nu.is_multiple_of(2) {
        scalar::ONE
    } else {
        -scalar::ONE
    }
}

/// Evaluate every displayed identity of the selected theorem.
pub fn validate_constraints(tp: &TheoremParams) -> Result<Vec<ConstraintCheck>, TheoremError> {
    tp.system.validate().map_err(TheoremError::System)?;
    let n = tp.dim();
    if !matches!(tp.id, TheoremId::T1 | TheoremId::T2) && tp.b.len() != n {
        return Err(TheoremError::BadParams(format!(
            "b must have length {n}"
        )));
    }
    if matches!(tp.id, TheoremId::T13 | TheoremId::T23 | TheoremId::T24) && !(tp.nu == 1 || tp.nu == 2)
    {
        return Err(TheoremError::BadParams("nu must be 1 or 2".into()));
    }

    let mut out = Vec::new();
    match tp.id {
        TheoremId::T1 => {
            let p = tp.e1()?;
            let [a1, a2, a3, _] = p.a;
            let cmu = p.c[p.mu];
            out.push(either_sign("a2 = ±a3", a2, a3));
            let d = a1 * a1 + a2 * a2 * cmu * cmu;
            out.push(ne("a1^2 + a2^2 c_mu^2 != 0", d, scalar::ZERO));
        }
        TheoremId::T11 => {
            let p = tp.e1()?;
            let [a1, a2, a3, _] = p.a;
            let _ = a1;
            let mu = p.mu;
            k_product_checks(&tp.k, &mut out);
            out.push(eq("b_mu = 0", tp.b[mu], scalar::ZERO));
            out.push(either_sign("a2^2 = ±a3^2", a2 * a2, a3 * a3));
            let beta = pair_skip(&tp.b, &p.c, mu);
            let [k1, k2, k3, k4] = tp.k;
            let (big_a, big_b) = (tp.big_a, tp.big_b);
            let rho2 = (a3 / a2) * (a3 / a2);
            out.push(eq("e^{2 sum' b_j c_j} = (a3/a2)^2", cexp(beta * scalar::re(2.0))?, rho2));
            out.push(eq("e^{-2 sum' b_j c_j} = (a3/a2)^2", cexp(-beta * scalar::re(2.0))?, rho2));
            out.push(eq(
                "e^{2A+2B} = a3^2 K2 K4 / (a2^2 K1 K3)",
                cexp((big_a + big_b) * scalar::re(2.0))?,
                a3 * a3 * k2 * k4 / (a2 * a2 * k1 * k3),
            ));
            out.push(eq(
                "e^{-sum'+A+B} = -a3 K4 / (a2 K1)",
                cexp(-beta + big_a + big_b)?,
                -a3 * k4 / (a2 * k1),
            ));
            out.push(eq(
                "e^{sum'-A-B} = -a3 K3 / (a2 K2)",
                cexp(beta - big_a - big_b)?,
                -a3 * k3 / (a2 * k2),
            ));
            out.push(eq(
                "e^{sum'+A+B} = -a3 K2 / (a2 K3)",
                cexp(beta + big_a + big_b)?,
                -a3 * k2 / (a2 * k3),
            ));
            out.push(eq(
                "e^{-sum'-A-B} = -a3 K1 / (a2 K4)",
                cexp(-beta - big_a - big_b)?,
                -a3 * k1 / (a2 * k4),
            ));
            psi_checks(&tp.psi1, mu, &p.c, &mut out)?;
        }
        TheoremId::T12 => {
            let p = tp.e1()?;
            let [a1, a2, a3, a4] = p.a;
            let mu = p.mu;
            let bmu = tp.b[mu];
            k_product_checks(&tp.k, &mut out);
            out.push(ne("a4 != 0", a4, scalar::ZERO));
            out.push(ne("b_mu != 0", bmu, scalar::ZERO));
            out.push(eq(
                "a1^4 a2^2 = a3^4 a4^2",
                a1.powu(4) * a2 * a2,
                a3.powu(4) * a4 * a4,
            ));
            // the proof-level form of the hypothesis
            out.push(eq("a4 b_mu^2 + a2 = 0", a4 * bmu * bmu + a2, scalar::ZERO));
            out.push(either_sign(
                "a3^2 = ±(a1 b_mu)^2",
                a3 * a3,
                (a1 * bmu) * (a1 * bmu),
            ));
            let beta = pair_full(&tp.b, &p.c);
            let [k1, k2, k3, k4] = tp.k;
            let (big_a, big_b) = (tp.big_a, tp.big_b);
            let rho2 = (a3 / (a1 * bmu)) * (a3 / (a1 * bmu));
            out.push(eq("e^{2 sum b_j c_j} = (a3/(a1 b_mu))^2", cexp(beta * scalar::re(2.0))?, rho2));
            out.push(eq("e^{-2 sum b_j c_j} = (a3/(a1 b_mu))^2", cexp(-beta * scalar::re(2.0))?, rho2));
            out.push(eq(
                "e^{2A+2B} = a3^2 K2 K4 / (a1^2 b_mu^2 K1 K3)",
                cexp((big_a + big_b) * scalar::re(2.0))?,
                a3 * a3 * k2 * k4 / (a1 * a1 * bmu * bmu * k1 * k3),
            ));
            let i = scalar::I;
            out.push(eq(
                "e^{-sum+A+B} = i a3 K4 / (a1 b_mu K1)",
                cexp(-beta + big_a + big_b)?,
                i * a3 * k4 / (a1 * bmu * k1),
            ));
            out.push(eq(
                "e^{sum-A-B} = i a3 K3 / (a1 b_mu K2)",
                cexp(beta - big_a - big_b)?,
                i * a3 * k3 / (a1 * bmu * k2),
            ));
            out.push(eq(
                "e^{sum+A+B} = -i a3 K2 / (a1 b_mu K3)",
                cexp(beta + big_a + big_b)?,
                -i * a3 * k2 / (a1 * bmu * k3),
            ));
            out.push(eq(
                "e^{-sum-A-B} = -i a3 K1 / (a1 b_mu K4)",
                cexp(-beta - big_a - big_b)?,
                -i * a3 * k1 / (a1 * bmu * k4),
            ));
            psi_checks(&tp.psi1, mu, &p.c, &mut out)?;
        }
        TheoremId::T13 => {
            let p = tp.e1()?;
            let [a1, a2, a3, a4] = p.a;
            let mu = p.mu;
            let bmu = tp.b[mu];
            k_product_checks(&tp.k, &mut out);
            out.push(ne("a4 != 0", a4, scalar::ZERO));
            out.push(ne("b_mu != 0", bmu, scalar::ZERO));
            out.push(eq(
                "i a1 b_mu + a4 b_mu^2 + a2 = (-1)^nu a3",
                scalar::I * a1 * bmu + a4 * bmu * bmu + a2,
                sign_nu(tp.nu) * a3,
            ));
            let beta = pair_full(&tp.b, &p.c);
            j3_block_checks(beta, &tp.k, tp.big_a, tp.big_b, tp.nu, &mut out)?;
            psi_checks(&tp.psi1, mu, &p.c, &mut out)?;
        }
        TheoremId::T2 => {
            let p = tp.e4()?;
            let n = p.dim;
            let an1 = p.a[n];
            let an2 = p.a[n + 1];
            let amu = p.a[tp.mu];
            let cmu = p.c[tp.mu];
            out.push(either_sign("a_{n+1} = ±a_{n+2}", an1, an2));
            let d = amu * amu + an1 * an1 * cmu * cmu;
            out.push(ne("a_mu^2 + a_{n+1}^2 c_mu^2 != 0", d, scalar::ZERO));
        }
        TheoremId::T22 => {
            let p = tp.e4()?;
            let n = p.dim;
            let an1 = p.a[n];
            let an2 = p.a[n + 1];
            k_product_checks(&tp.k, &mut out);
            out.push(either_sign("a_{n+1}^2 = ±a_{n+2}^2", an1 * an1, an2 * an2));
            out.push(eq(
                "sum a_j b_j = 0",
                pair_full(&tp.b, &p.a[..n]),
                scalar::ZERO,
            ));
            let beta = pair_full(&tp.b, &p.c);
            let [k1, k2, k3, k4] = tp.k;
            let (big_a, big_b) = (tp.big_a, tp.big_b);
            let rho2 = (an2 / an1) * (an2 / an1);
            out.push(eq("e^{2 sum b_j c_j} = (a_{n+2}/a_{n+1})^2", cexp(beta * scalar::re(2.0))?, rho2));
            out.push(eq("e^{-2 sum b_j c_j} = (a_{n+2}/a_{n+1})^2", cexp(-beta * scalar::re(2.0))?, rho2));
            out.push(eq(
                "e^{2A+2B} = a_{n+2}^2 K2 K4 / (a_{n+1}^2 K1 K3)",
                cexp((big_a + big_b) * scalar::re(2.0))?,
                an2 * an2 * k2 * k4 / (an1 * an1 * k1 * k3),
            ));
            out.push(eq(
                "e^{-sum+A+B} = -a_{n+2} K4 / (a_{n+1} K1)",
                cexp(-beta + big_a + big_b)?,
                -an2 * k4 / (an1 * k1),
            ));
            out.push(eq(
                "e^{sum+A+B} = -a_{n+2} K2 / (a_{n+1} K3)",
                cexp(beta + big_a + big_b)?,
                -an2 * k2 / (an1 * k3),
            ));
            out.push(eq(
                "e^{sum-A-B} = -a_{n+2} K3 / (a_{n+1} K2)",
                cexp(beta - big_a - big_b)?,
                -an2 * k3 / (an1 * k2),
            ));
            out.push(eq(
                "e^{-sum-A-B} = -a_{n+2} K1 / (a_{n+1} K4)",
                cexp(-beta - big_a - big_b)?,
                -an2 * k1 / (an1 * k4),
            ));
        }
        TheoremId::T23 => {
            let p = tp.e4()?;
            let n = p.dim;
            let an1 = p.a[n];
            let an2 = p.a[n + 1];
            k_product_checks(&tp.k, &mut out);
            out.push(ne(
                "a_{n+1} != (-1)^nu a_{n+2}",
                an1,
                sign_nu(tp.nu) * an2,
            ));
            let s = pair_full(&tp.b, &p.a[..n]);
            out.push(eq(
                "sum a_j b_j = i(a_{n+1} - (-1)^nu a_{n+2})",
                s,
                scalar::I * (an1 - sign_nu(tp.nu) * an2),
            ));
            out.push(ne("sum a_j b_j != 0", s, scalar::ZERO));
            let beta = pair_full(&tp.b, &p.c);
            j3_block_checks(beta, &tp.k, tp.big_a, tp.big_b, tp.nu, &mut out)?;
        }
        TheoremId::T24 => {
            let p = tp.e4()?;
            let n = p.dim;
            let an1 = p.a[n];
            let an2 = p.a[n + 1];
            k_product_checks(&tp.k, &mut out);
            out.push(eq(
                "a_{n+1} = (-1)^nu a_{n+2}",
                an1,
                sign_nu(tp.nu) * an2,
            ));
            out.push(eq(
                "sum a_j b_j = 0",
                pair_full(&tp.b, &p.a[..n]),
                scalar::ZERO,
            ));
            let beta = pair_full(&tp.b, &p.c);
            j3_block_checks(beta, &tp.k, tp.big_a, tp.big_b, tp.nu, &mut out)?;
        }
    }
    Ok(out)
}

/// The shared identity block of T13, T23 and T24:
/// `e^{2 sum b_j c_j} = 1`, `e^{2A-2B} = K2 K3/(K1 K4)` and the four
/// `(-1)^{nu+1}`-signed cross identities.
fn j3_block_checks(
    beta: Complex64,
    k: &[Complex64; 4],
    big_a: Complex64,
    big_b: Complex64,
    nu: u8,
    out: &mut Vec<ConstraintCheck>,
) -> Result<(), TheoremError> {
    let [k1, k2, k3, k4] = *k;
    let sgn = -sign_nu(nu); // (-1)^{nu+1}
    out.push(eq("e^{2 sum b_j c_j} = 1", cexp(beta * scalar::re(2.0))?, scalar::ONE));
    out.push(eq(
        "e^{2A-2B} = K2 K3 / (K1 K4)",
        cexp((big_a - big_b) * scalar::re(2.0))?,
        k2 * k3 / (k1 * k4),
    ));
    out.push(eq(
        "e^{sum-A+B} = (-1)^{nu+1} K4 / K2",
        cexp(beta - big_a + big_b)?,
        sgn * k4 / k2,
    ));
    out.push(eq(
        "e^{sum+A-B} = (-1)^{nu+1} K2 / K4",
        cexp(beta + big_a - big_b)?,
        sgn * k2 / k4,
    ));
    out.push(eq(
        "e^{-sum+A-B} = (-1)^{nu+1} K3 / K1",
        cexp(-beta + big_a - big_b)?,
        sgn * k3 / k1,
    ));
    out.push(eq(
        "e^{-sum-A+B} = (-1)^{nu+1} K1 / K3",
        cexp(-beta - big_a + big_b)?,
        sgn * k1 / k3,
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c, re, I, ZERO};
    use core::f64::consts::PI;

    fn example_one_system() -> SystemParams {
        SystemParams::E1(E1Params {
            dim: 3,
            c: alloc::vec![c(0.0, PI), c(0.0, -PI), c(0.0, PI / 2.0)],
            mu: 0,
            a: [I, re(-18.0), re(3.0), re(2.0)],
        })
    }

    #[test]
    fn t13_hypothesis_with_example_coefficients() {
        // a = (i, -18, 3, 2), b_mu = 3, nu = 1:
        // i*i*3 + 2*9 - 18 = -3 = -a3 -> pass
        let tp = TheoremParams {
            id: TheoremId::T13,
            system: example_one_system(),
            mu: 0,
            b: alloc::vec![re(3.0), ZERO, ZERO],
            big_a: ZERO,
            big_b: ZERO,
            k: [re(1.0), re(1.0), re(1.0), re(1.0)],
            nu: 1,
            psi1: None,
            aux: AuxSpec::Zero,
        };
        let checks = validate_constraints(&tp).unwrap();
        let hyp = checks
            .iter()
            .find(|ch| ch.label.starts_with("i a1 b_mu"))
            .unwrap();
        assert!(hyp.pass);
        assert!(approx_eq(hyp.lhs, re(-3.0), 1e-12));
    }

    #[test]
    fn t11_sign_hypothesis_fails_for_mismatched_squares() {
        let tp = TheoremParams {
            id: TheoremId::T11,
            system: SystemParams::E1(E1Params {
                dim: 2,
                c: alloc::vec![ZERO, re(1.0)],
                mu: 0,
                a: [re(1.0), re(1.0), re(2.0), re(1.0)],
            }),
            mu: 0,
            b: alloc::vec![ZERO, re(1.0)],
            big_a: ZERO,
            big_b: ZERO,
            k: [re(1.0), re(1.0), re(1.0), re(1.0)],
            nu: 1,
            psi1: None,
            aux: AuxSpec::Solve,
        };
        let checks = validate_constraints(&tp).unwrap();
        let hyp = checks.iter().find(|ch| ch.label.contains("±a3^2")).unwrap();
        assert!(!hyp.pass, "1 != ±4");
    }

    #[test]
    fn k_product_check_passes_and_fails() {
        let mut out = Vec::new();
        k_product_checks(&[re(2.0), re(0.5), re(1.0), re(1.0)], &mut out);
        assert!(out.iter().all(|c| c.pass));
        out.clear();
        k_product_checks(&[re(2.0), re(1.0), re(1.0), re(1.0)], &mut out);
        assert!(!out[0].pass);
    }
}
