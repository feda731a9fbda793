//! Auxiliary-pair solvers for the displayed functional identities.
//!
//! The inhomogeneous conditions have the shape
//!
//! ```text
//! p*g1(z) + q*g2(z+c) = r_plus * e^{V} + r_minus * e^{-V}
//! p*g2(z) + q*g1(z+c) = s_plus * e^{V} + s_minus * e^{-V}
//! ```
//!
//! where `V(z+c) - V(z)` is a constant `d` and `E = e^d`. With the ansatz
//! `g_j = x_j e^{V} + y_j e^{-V}` the identities decouple into two 2x2
//! symmetric linear systems with matrices `[[p, qE], [qE, p]]` and
//! `[[p, q/E], [q/E, p]]`. When the determinant `p^2 - (qE)^2` vanishes the
//! consistent case is solved at minimal norm; the inconsistent case has an
//! exact solution with affine fronts `(L(z) + u) e^{±V}` where `L` is a
//! linear form from the admitted ring with a prescribed pairing `L(c)` —
//! the same mechanism that puts `z_mu` in front of the exponentials in the
//! theorem statements. `solve_condition` stays within constant fronts and
//! reports inconsistency; `solve_condition_extended` escalates.
//!
//! The homogeneous pairs `p*h1 + q*h2(z+c) = 0 = p*h2 + q*h1(z+c)` are
//! produced directly from a single exponential `tau * e^{M}` subject to the
//! consistency condition `e^{2 M(c)} = (p/q)^2`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::analysis::LinearForm;
use crate::expoly::{ExpPoly, ExpTerm};
use crate::poly::Polynomial;
use crate::scalar::{self, approx_eq, cexp, Complex64};

use super::{GammaPair, TheoremError};

/// Which displayed identity block is being solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CondKind {
    /// Rows 1-2 of condition (A): second identity carries
    /// `gamma1 K3 e^{B}` on `e^{-V}` and `gamma2 K4 e^{-B}` on `e^{V}`.
    A,
    /// Rows 1-2 of condition (B); same coefficient arrangement as A.
    BPrimary,
    /// Rows 4-5 of condition (B): second identity carries
    /// `gamma1 K3 e^{B}` on `e^{V}` and `gamma2 K4 e^{-B}` on `e^{-V}`.
    BSecondary,
}

/// Ring the auxiliary fronts and escalation forms must live in.
#[derive(Clone, Debug)]
pub enum FrontRing {
    /// Functions of all variables except `z_mu` (0-based).
    MuFree { mu: usize },
    /// Functions of the kernel forms `a_mu z_k - a_k z_mu`.
    Kernel { a: Vec<Complex64>, mu: usize },
}

impl FrontRing {
    /// A ring form `L` with `L(c) = target`, when one exists.
    fn form_with_pairing(
        &self,
        c: &[Complex64],
        target: Complex64,
    ) -> Option<LinearForm> {
        if target == scalar::ZERO {
            return Some(LinearForm::zero(c.len()));
        }
        match self {
            FrontRing::MuFree { mu } => {
                let mut best: Option<(usize, f64)> = None;
                for (j, w) in c.iter().enumerate() {
                    if j == *mu {
                        continue;
                    }
                    let m = w.norm();
                    if m > best.map(|(_, b)| b).unwrap_or(0.0) {
                        best = Some((j, m));
                    }
                }
                let (j, m) = best?;
                if m < 1e-12 {
                    return None;
                }
                let mut coeffs = alloc::vec![scalar::ZERO; c.len()];
                coeffs[j] = target / c[j];
                Some(LinearForm::new(coeffs))
            }
            FrontRing::Kernel { a, mu } => {
                let mut best: Option<(usize, Complex64, f64)> = None;
                for k in 0..c.len() {
                    if k == *mu {
                        continue;
                    }
                    let pairing = a[*mu] * c[k] - a[k] * c[*mu];
                    let m = pairing.norm();
                    if m > best.map(|(_, _, b)| b).unwrap_or(0.0) {
                        best = Some((k, pairing, m));
                    }
                }
                let (k, pairing, m) = best?;
                if m < 1e-12 {
                    return None;
                }
                let scale = target / pairing;
                let mut coeffs = alloc::vec![scalar::ZERO; c.len()];
                coeffs[k] = a[*mu] * scale;
                coeffs[*mu] = -a[k] * scale;
                Some(LinearForm::new(coeffs))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConditionInput<'a> {
    pub kind: CondKind,
    /// Coefficient on the unshifted function (`a_2` or `a_{n+1}`).
    pub p: Complex64,
    /// Coefficient on the shifted function (`a_3` or `a_{n+2}`).
    pub q: Complex64,
    pub gamma: GammaPair,
    pub k: [Complex64; 4],
    pub big_a: Complex64,
    pub big_b: Complex64,
    /// Exponent `V` (zero constant part); `V(z+c) - V(z)` must be constant.
    pub exponent: &'a Polynomial,
    pub shift: &'a [Complex64],
    pub ring: FrontRing,
}

#[derive(Clone, Debug)]
pub struct ConditionSolution {
    pub g1: ExpPoly,
    pub g2: ExpPoly,
    /// Constant front coefficients on `e^{V}` in `(g1, g2)`.
    pub plus: (Complex64, Complex64),
    /// Constant front coefficients on `e^{-V}` in `(g1, g2)`.
    pub minus: (Complex64, Complex64),
    pub singular: bool,
    pub affine: bool,
    /// One-parameter family descriptor for singular consistent systems.
    pub family: Option<String>,
}

/// Right-hand sides of the two identities as canonical exponential
/// polynomials.
pub fn condition_rhs(input: &ConditionInput<'_>) -> Result<(ExpPoly, ExpPoly), TheoremError> {
    let dim = input.exponent.dim();
    let (rp, rm, sp, sm) = rhs_coefficients(input)?;
    let v = input.exponent.clone();
    let rhs1 = ExpPoly::from_raw_terms(
        dim,
        alloc::vec![
            ExpTerm { front: Polynomial::constant(dim, rp), exponent: v.clone() },
            ExpTerm { front: Polynomial::constant(dim, rm), exponent: v.neg() },
        ],
        0.0,
    )?;
    let rhs2 = ExpPoly::from_raw_terms(
        dim,
        alloc::vec![
            ExpTerm { front: Polynomial::constant(dim, sp), exponent: v.clone() },
            ExpTerm { front: Polynomial::constant(dim, sm), exponent: v.neg() },
        ],
        0.0,
    )?;
    Ok((rhs1, rhs2))
}

fn rhs_coefficients(
    input: &ConditionInput<'_>,
) -> Result<(Complex64, Complex64, Complex64, Complex64), TheoremError> {
    let ea = cexp(input.big_a)?;
    let eb = cexp(input.big_b)?;
    let g = input.gamma;
    let r_plus = g.gamma1 * input.k[0] * ea;
    let r_minus = g.gamma2 * input.k[1] / ea;
    let (s_plus, s_minus) = match input.kind {
        CondKind::A | CondKind::BPrimary => (g.gamma2 * input.k[3] / eb, g.gamma1 * input.k[2] * eb),
        CondKind::BSecondary => (g.gamma1 * input.k[2] * eb, g.gamma2 * input.k[3] / eb),
    };
    Ok((r_plus, r_minus, s_plus, s_minus))
}

/// The constant `d = V(z+c) - V(z)` of a shift-compatible exponent.
fn shift_constant(
    exponent: &Polynomial,
    shift: &[Complex64],
) -> Result<Complex64, TheoremError> {
    let diff = exponent
        .shift(shift)
        .and_then(|s| s.sub(exponent))
        .map_err(TheoremError::Algebra)?;
    let nonconst = diff.without_constant();
    if nonconst.max_coeff_mag() > 1e-9 * (1.0 + exponent.max_coeff_mag()) {
        return Err(TheoremError::BadParams(
            "condition exponent is not shift-compatible: V(z+c) - V(z) is not constant".into(),
        ));
    }
    Ok(diff.constant_part())
}

enum Solve2 {
    Unique(Complex64, Complex64),
    MinNorm {
        x: (Complex64, Complex64),
        family: String,
    },
    NeedsAffine {
        sigma: Complex64,
        defect: Complex64,
    },
}

/// Solve `[[p, w], [w, p]] (x1, x2) = (r, s)` with singular handling.
fn solve_symmetric(p: Complex64, w: Complex64, r: Complex64, s: Complex64) -> Solve2 {
    let det = p * p - w * w;
    let scale = (p.norm() * p.norm()).max(w.norm() * w.norm());
    if det.norm() > 1e-12 * scale.max(1.0) {
        let x1 = (p * r - w * s) / det;
        let x2 = (p * s - w * r) / det;
        return Solve2::Unique(x1, x2);
    }
    // rank one: second row = sigma * first row with sigma = w / p
    let sigma = w / p;
    let defect = s - sigma * r;
    if defect.norm() <= 1e-9 * (1.0 + r.norm() + s.norm()) {
        let denom = p.norm() * p.norm() + w.norm() * w.norm();
        let x1 = p.conj() * r / scalar::re(denom);
        let x2 = w.conj() * r / scalar::re(denom);
        Solve2::MinNorm {
            x: (x1, x2),
            family: String::from(
                "one-parameter family: p*x1 + w*x2 = r along kernel (w, -p), minimal-norm representative returned",
            ),
        }
    } else {
        Solve2::NeedsAffine { sigma, defect }
    }
}

/// One exponential class solved into front polynomials `(front1, front2)`.
struct ClassSolution {
    front1: Polynomial,
    front2: Polynomial,
    x: (Complex64, Complex64),
    singular: bool,
    affine: bool,
    family: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn solve_class(
    label: &str,
    p: Complex64,
    w: Complex64,
    r: Complex64,
    s: Complex64,
    ring: &FrontRing,
    shift: &[Complex64],
    dim: usize,
    allow_affine: bool,
) -> Result<ClassSolution, TheoremError> {
    match solve_symmetric(p, w, r, s) {
        Solve2::Unique(x1, x2) => Ok(ClassSolution {
            front1: Polynomial::constant(dim, x1),
            front2: Polynomial::constant(dim, x2),
            x: (x1, x2),
            singular: false,
            affine: false,
            family: None,
        }),
        Solve2::MinNorm { x, family } => Ok(ClassSolution {
            front1: Polynomial::constant(dim, x.0),
            front2: Polynomial::constant(dim, x.1),
            x,
            singular: true,
            affine: false,
            family: Some(family),
        }),
        Solve2::NeedsAffine { sigma, defect } => {
            if !allow_affine {
                return Err(TheoremError::AuxiliaryInconsistent {
                    label: format!("{label} (constant fronts)"),
                    defect,
                });
            }
            // fronts L + u and -sigma L + v with L(c) = (s - sigma r)/(2w)
            let target = defect / (w * scalar::re(2.0));
            let l = ring.form_with_pairing(shift, target).ok_or_else(|| {
                TheoremError::AuxiliaryInconsistent {
                    label: format!("{label} (no ring form pairs with the shift)"),
                    defect,
                }
            })?;
            let lc = l.pair(shift);
            let r_adj = r + sigma * w * lc;
            let denom = p.norm() * p.norm() + w.norm() * w.norm();
            let u = p.conj() * r_adj / scalar::re(denom);
            let v = w.conj() * r_adj / scalar::re(denom);
            let front1 = l
                .to_polynomial()
                .add(&Polynomial::constant(dim, u))
                .map_err(TheoremError::Algebra)?;
            let front2 = l
                .to_polynomial()
                .scale(-sigma)
                .add(&Polynomial::constant(dim, v))
                .map_err(TheoremError::Algebra)?;
            Ok(ClassSolution {
                front1,
                front2,
                x: (u, v),
                singular: true,
                affine: true,
                family: None,
            })
        }
    }
}

fn solve_condition_impl(
    input: &ConditionInput<'_>,
    allow_affine: bool,
) -> Result<ConditionSolution, TheoremError> {
    let dim = input.exponent.dim();
    if input.shift.len() != dim {
        return Err(TheoremError::BadParams("shift length != dimension".into()));
    }
    if input.p == scalar::ZERO || input.q == scalar::ZERO {
        return Err(TheoremError::BadParams("p and q must be nonzero".into()));
    }
    let d = shift_constant(input.exponent, input.shift)?;
    let e = cexp(d)?;
    let (r_plus, r_minus, s_plus, s_minus) = rhs_coefficients(input)?;

    let plus = solve_class(
        "e^{+V} class",
        input.p,
        input.q * e,
        r_plus,
        s_plus,
        &input.ring,
        input.shift,
        dim,
        allow_affine,
    )?;
    let minus = solve_class(
        "e^{-V} class",
        input.p,
        input.q / e,
        r_minus,
        s_minus,
        &input.ring,
        input.shift,
        dim,
        allow_affine,
    )?;

    let v = input.exponent.clone();
    let g1 = ExpPoly::from_raw_terms(
        dim,
        alloc::vec![
            ExpTerm { front: plus.front1.clone(), exponent: v.clone() },
            ExpTerm { front: minus.front1.clone(), exponent: v.neg() },
        ],
        0.0,
    )
    .map_err(TheoremError::Algebra)?;
    let g2 = ExpPoly::from_raw_terms(
        dim,
        alloc::vec![
            ExpTerm { front: plus.front2.clone(), exponent: v.clone() },
            ExpTerm { front: minus.front2.clone(), exponent: v.neg() },
        ],
        0.0,
    )
    .map_err(TheoremError::Algebra)?;

    let solution = ConditionSolution {
        g1,
        g2,
        plus: plus.x,
        minus: minus.x,
        singular: plus.singular || minus.singular,
        affine: plus.affine || minus.affine,
        family: plus.family.or(minus.family),
    };

    // substitute back; both displayed identities must vanish canonically
    let (res1, res2) = condition_residuals(input, &solution.g1, &solution.g2)?;
    if !res1.is_identically_zero() || !res2.is_identically_zero() {
        return Err(TheoremError::CertificateFailed {
            label: "condition identities".into(),
        });
    }
    Ok(solution)
}

/// Solve the displayed condition identities with constant exponential
/// fronts; singular consistent systems yield the minimal-norm solution,
/// inconsistent ones are reported with the defect.
pub fn solve_condition(input: &ConditionInput<'_>) -> Result<ConditionSolution, TheoremError> {
    solve_condition_impl(input, false)
}

/// Like [`solve_condition`], but escalates singular inconsistent systems to
/// affine fronts from the admitted ring.
pub fn solve_condition_extended(
    input: &ConditionInput<'_>,
) -> Result<ConditionSolution, TheoremError> {
    solve_condition_impl(input, true)
}

/// Residuals of the two displayed identities for a candidate pair.
pub fn condition_residuals(
    input: &ConditionInput<'_>,
    g1: &ExpPoly,
    g2: &ExpPoly,
) -> Result<(ExpPoly, ExpPoly), TheoremError> {
    let (rhs1, rhs2) = condition_rhs(input)?;
    let lhs1 = g1
        .scale(input.p)
        .add(&g2.shift(input.shift)?.scale(input.q))?;
    let lhs2 = g2
        .scale(input.p)
        .add(&g1.shift(input.shift)?.scale(input.q))?;
    Ok((lhs1.sub(&rhs1)?, lhs2.sub(&rhs2)?))
}

/// Homogeneous auxiliary pair `h1 = tau e^{M}`,
/// `h2 = -(p / (q e^{M(c)})) tau e^{M}`; both `p h1 + q h2(z+c)` and its
/// mirror vanish identically provided `e^{2 M(c)} = (p/q)^2`.
/// `tau = 0` yields the zero pair unconditionally.
pub fn homogeneous_pair(
    m: &LinearForm,
    tau: Complex64,
    p: Complex64,
    q: Complex64,
    shift: &[Complex64],
) -> Result<(ExpPoly, ExpPoly), TheoremError> {
    let dim = m.dim();
    if shift.len() != dim {
        return Err(TheoremError::BadParams("shift length != dimension".into()));
    }
    if tau == scalar::ZERO {
        return Ok((ExpPoly::zero(dim), ExpPoly::zero(dim)));
    }
    if q == scalar::ZERO {
        return Err(TheoremError::BadParams("q must be nonzero".into()));
    }
    let w = cexp(m.pair(shift))?;
    let lhs = w * w;
    let rhs = (p / q) * (p / q);
    if !approx_eq(lhs, rhs, 1e-9) {
        return Err(TheoremError::BadParams(format!(
            "homogeneous pair consistency fails: e^{{2M(c)}} = {lhs} but (p/q)^2 = {rhs}"
        )));
    }
    let h1 = ExpPoly::term(
        Polynomial::constant(dim, tau),
        m.to_polynomial(),
    )?;
    let h2 = h1.scale(-(p / (q * w)));
    Ok((h1, h2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c, re};
    use core::f64::consts::PI;

    #[test]
    fn nonsingular_two_by_two() {
        // [[1, 2], [2, 1]] (x1, x2) = (3, 0) -> (-1, 2)
        match solve_symmetric(re(1.0), re(2.0), re(3.0), re(0.0)) {
            Solve2::Unique(x1, x2) => {
                assert!(approx_eq(x1, re(-1.0), 1e-12));
                assert!(approx_eq(x2, re(2.0), 1e-12));
            }
            _ => panic!("expected unique solution"),
        }
    }

    #[test]
    fn all_zero_rhs_gives_zero_solution() {
        match solve_symmetric(re(1.0), re(1.0), scalar::ZERO, scalar::ZERO) {
            Solve2::MinNorm { x, .. } => {
                assert_eq!(x.0, scalar::ZERO);
                assert_eq!(x.1, scalar::ZERO);
            }
            _ => panic!("expected minimal-norm zero solution"),
        }
    }

    #[test]
    fn singular_consistent_min_norm() {
        // p = q = 1, E = 1, rhs (2, 2): family x1 + x2 = 2, minimal (1, 1)
        match solve_symmetric(re(1.0), re(1.0), re(2.0), re(2.0)) {
            Solve2::MinNorm { x, family } => {
                assert!(approx_eq(x.0, re(1.0), 1e-12));
                assert!(approx_eq(x.1, re(1.0), 1e-12));
                assert!(family.contains("family"));
            }
            _ => panic!("expected minimal-norm solution"),
        }
    }

    #[test]
    fn singular_inconsistent_reports_defect() {
        match solve_symmetric(re(1.0), re(1.0), re(2.0), re(0.0)) {
            Solve2::NeedsAffine { defect, .. } => {
                assert!(approx_eq(defect, re(-2.0), 1e-12));
            }
            _ => panic!("expected inconsistency"),
        }
    }

    #[test]
    fn homogeneous_pair_example_coefficients() {
        // p = -18, q = 3: need e^{2 M(c)} = 36; M = (log 6 / c2') z2 with
        // M(c) = log 6 works
        let cvec = [c(0.0, PI), c(0.0, -PI), c(0.0, PI / 2.0)];
        let m = LinearForm::new(alloc::vec![
            scalar::ZERO,
            re(6.0f64.ln()) / cvec[1],
            scalar::ZERO,
        ]);
        let (h1, h2) = homogeneous_pair(&m, re(1.0), re(-18.0), re(3.0), &cvec).unwrap();
        // h2 = -(p / (q e^{M(c)})) h1 = -(-18 / (3 * 6)) h1 = h1
        assert!(h1.equals(&h2).unwrap());
        // both identities vanish
        let id1 = h1
            .scale(re(-18.0))
            .add(&h2.shift(&cvec).unwrap().scale(re(3.0)))
            .unwrap();
        let id2 = h2
            .scale(re(-18.0))
            .add(&h1.shift(&cvec).unwrap().scale(re(3.0)))
            .unwrap();
        assert!(id1.is_identically_zero());
        assert!(id2.is_identically_zero());
    }

    #[test]
    fn homogeneous_pair_zero_tau() {
        let cvec = [re(1.0)];
        let m = LinearForm::new(alloc::vec![re(1.0)]);
        let (h1, h2) = homogeneous_pair(&m, scalar::ZERO, re(5.0), re(7.0), &cvec).unwrap();
        assert!(h1.is_identically_zero());
        assert!(h2.is_identically_zero());
    }

    #[test]
    fn homogeneous_pair_half_turn_shift() {
        // p = q = 1, M(c) = pi i: e^{2 pi i} = 1 = (p/q)^2, h2 = +tau e^M
        let cvec = [c(0.0, PI)];
        let m = LinearForm::new(alloc::vec![re(1.0)]);
        let tau = c(0.3, -0.4);
        let (h1, h2) = homogeneous_pair(&m, tau, re(1.0), re(1.0), &cvec).unwrap();
        assert!(h2.equals(&h1).unwrap());
        assert!(!h1.is_identically_zero());
    }

    #[test]
    fn homogeneous_pair_rejects_inconsistent_exponent() {
        let cvec = [re(1.0)];
        let m = LinearForm::new(alloc::vec![re(1.0)]); // e^{2M(c)} = e^2
        let err = homogeneous_pair(&m, re(1.0), re(1.0), re(1.0), &cvec).unwrap_err();
        assert!(matches!(err, TheoremError::BadParams(_)));
    }
}
