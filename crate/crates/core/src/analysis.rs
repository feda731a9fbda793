//! Growth order and the linear-form building blocks of auxiliary functions.
//!
//! For an exponential polynomial the order of growth is read off the
//! exponents: a term `Q * exp(P)` has order `deg P` when `P` is non-zero and
//! order 0 otherwise, and a sum has the maximum order of its terms.
//!
//! Kernel forms `a_mu z_k - a_k z_mu` are annihilated by the directional
//! operator `sum_j a_j d/dz_j`; any function composed from them is too.
//! Shift-invariant forms `t` with `t . c = 0` are the raw material of the
//! polynomial exponent pieces that survive a shift unchanged.

use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)] // resolves f64 math in the no_std build
use num_traits::Float;

use crate::expoly::{ExpPoly, ExpTerm};
use crate::poly::Polynomial;
use crate::scalar::{self, Complex64, TAU_EXP};

/// Degree-1 form `sum_j coeffs[j] * z_j` with zero constant.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    coeffs: Vec<Complex64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        LinearForm {
            coeffs: alloc::vec![scalar::ZERO; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|w| *w == scalar::ZERO)
    }

    /// `sum_j t_j p_j`.
    pub fn pair(&self, p: &[Complex64]) -> Complex64 {
        self.coeffs
            .iter()
            .zip(p.iter())
            .map(|(t, z)| t * z)
            .sum()
    }

    pub fn scale(&self, w: Complex64) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|t| t * w).collect(),
        }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::linear(&self.coeffs)
    }

    /// `sum_j a_j t_j`; zero iff the directional operator annihilates the form.
    pub fn annihilation_residual(&self, a: &[Complex64]) -> Complex64 {
        self.pair(a)
    }

    /// True if the coefficient at `mu` (0-based) vanishes.
    pub fn is_free_of(&self, mu: usize) -> bool {
        self.coeffs[mu] == scalar::ZERO
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnalysisError {
    PivotIsZero { mu: usize },
    NotShiftInvariant { residual: Complex64 },
    NotPeriodic { index: usize, value: Complex64 },
    NonConstantFront { index: usize },
    DimensionMismatch { expected: usize, found: usize },
}

impl core::fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AnalysisError::PivotIsZero { mu } => {
                write!(f, "coefficient a_{} must be nonzero", mu + 1)
            }
            AnalysisError::NotShiftInvariant { residual } => {
                write!(f, "form is not shift-invariant: sum t_j c_j = {residual}")
            }
            AnalysisError::NotPeriodic { index, value } => {
                write!(
                    f,
                    "exponent {index} pairs with the period to {value}, not a multiple of 2*pi*i"
                )
            }
            AnalysisError::NonConstantFront { index } => {
                write!(f, "front {index} of a periodic builder must be constant")
            }
            AnalysisError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
        }
    }
}

/// Order of growth of an exponential polynomial: the maximum exponent
/// degree over its terms, 0 for pure polynomials and for the zero function.
pub fn order_of_growth(f: &ExpPoly) -> u32 {
    f.terms()
        .iter()
        .map(|t| if t.exponent.is_zero() { 0 } else { t.exponent.degree() })
        .max()
        .unwrap_or(0)
}

/// The `n - 1` forms `a_mu z_k - a_k z_mu` (`k != mu`, all indices 0-based).
/// Each is annihilated by `sum_j a_j d/dz_j`.
pub fn kernel_forms(a: &[Complex64], mu: usize) -> Result<Vec<LinearForm>, AnalysisError> {
    let n = a.len();
    if mu >= n {
        return Err(AnalysisError::DimensionMismatch { expected: n, found: mu + 1 });
    }
    if a[mu] == scalar::ZERO {
        return Err(AnalysisError::PivotIsZero { mu });
    }
    let mut forms = Vec::with_capacity(n - 1);
    for k in 0..n {
        if k == mu {
            continue;
        }
        let mut coeffs = alloc::vec![scalar::ZERO; n];
        coeffs[k] = a[mu];
        coeffs[mu] = -a[k];
        forms.push(LinearForm::new(coeffs));
    }
    Ok(forms)
}

/// Validate that the form `t` is invariant under `z -> z + c`, i.e.
/// `|sum t_j c_j| <= TAU_EXP`; on success return it as a [`LinearForm`].
pub fn shift_invariant_form(
    t: &[Complex64],
    c: &[Complex64],
) -> Result<LinearForm, AnalysisError> {
    if t.len() != c.len() {
        return Err(AnalysisError::DimensionMismatch {
            expected: c.len(),
            found: t.len(),
        });
    }
    let form = LinearForm::new(t.to_vec());
    let residual = form.pair(c);
    if residual.norm() <= TAU_EXP {
        Ok(form)
    } else {
        Err(AnalysisError::NotShiftInvariant { residual })
    }
}

/// Membership of `v` in `2*pi*i*Z` within tolerance 1e-9:
/// `|Re v| <= 1e-9` and `Im v / (2 pi)` within 1e-9 of an integer.
pub fn is_two_pi_i_multiple(v: Complex64) -> bool {
    let tol = 1e-9;
    if v.re.abs() > tol {
        return false;
    }
    let turns = v.im / (2.0 * core::f64::consts::PI);
    (turns - turns.round()).abs() <= tol
}

/// Build `sum_k front_k * exp(L_k)` with every exponent satisfying
/// `L_k(p)` in `2*pi*i*Z`, so the result is invariant under `z -> z + p`.
/// Fronts must be constant polynomials.
pub fn periodic_exp_poly(
    period: &[Complex64],
    spec: &[(LinearForm, Polynomial)],
) -> Result<ExpPoly, AnalysisError> {
    let dim = period.len();
    let mut raw = Vec::with_capacity(spec.len());
    for (index, (form, front)) in spec.iter().enumerate() {
        if form.dim() != dim || front.dim() != dim {
            return Err(AnalysisError::DimensionMismatch {
                expected: dim,
                found: form.dim().max(front.dim()),
            });
        }
        if !front.is_constant() {
            return Err(AnalysisError::NonConstantFront { index });
        }
        let value = form.pair(period);
        if !is_two_pi_i_multiple(value) {
            return Err(AnalysisError::NotPeriodic { index, value });
        }
        raw.push(ExpTerm {
            front: front.clone(),
            exponent: form.to_polynomial(),
        });
    }
    ExpPoly::from_raw_terms(dim, raw, 0.0)
        .map_err(|_| AnalysisError::DimensionMismatch { expected: dim, found: dim })
}

/// Diagnostic description of a linear form, `t1*z1+...`.
pub fn describe_form(form: &LinearForm) -> String {
    crate::parse::print_polynomial(&form.to_polynomial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{approx_eq, c, re};
    use core::f64::consts::PI;

    #[test]
    fn order_of_pure_polynomial_is_zero() {
        let f = ExpPoly::from_polynomial(
            Polynomial::variable(1, 0).unwrap().pow(3).unwrap(),
        );
        assert_eq!(order_of_growth(&f), 0);
    }

    #[test]
    fn order_of_quadratic_exponent() {
        // e^{z1 z2} has order 2
        let p = Polynomial::variable(2, 0)
            .unwrap()
            .mul(&Polynomial::variable(2, 1).unwrap())
            .unwrap();
        let f = ExpPoly::exp_of(p).unwrap();
        assert_eq!(order_of_growth(&f), 2);
    }

    #[test]
    fn kernel_forms_for_example_coefficients() {
        // a = (1, -2, 3, 7), mu = 1 -> z2 + 2 z1, z3 - 3 z1, z4 - 7 z1
        let a = [re(1.0), re(-2.0), re(3.0), re(7.0)];
        let forms = kernel_forms(&a, 0).unwrap();
        assert_eq!(forms.len(), 3);
        assert_eq!(forms[0].coeffs(), &[re(2.0), re(1.0), re(0.0), re(0.0)]);
        assert_eq!(forms[1].coeffs(), &[re(-3.0), re(0.0), re(1.0), re(0.0)]);
        assert_eq!(forms[2].coeffs(), &[re(-7.0), re(0.0), re(0.0), re(1.0)]);
        for f in &forms {
            assert_eq!(f.annihilation_residual(&a), scalar::ZERO);
        }
    }

    #[test]
    fn kernel_span_contains_annihilated_direction() {
        // direction (-8, 1, 1, 1) with a = (1, -2, 3, 7): coefficients in the
        // kernel basis are read off the non-pivot entries, then the pivot
        // entry must match.
        let a = [re(1.0), re(-2.0), re(3.0), re(7.0)];
        let t = [re(-8.0), re(1.0), re(1.0), re(1.0)];
        assert_eq!(LinearForm::new(t.to_vec()).annihilation_residual(&a), scalar::ZERO);
        let forms = kernel_forms(&a, 0).unwrap();
        // x_k = t_k / a_mu for the form contributing z_{k+1}
        let mut recon = LinearForm::zero(4);
        for (f, tk) in forms.iter().zip(t.iter().skip(1)) {
            recon = recon.add(&f.scale(*tk / a[0]));
        }
        for (lhs, rhs) in recon.coeffs().iter().zip(t.iter()) {
            assert!(approx_eq(*lhs, *rhs, 1e-12));
        }
    }

    #[test]
    fn kernel_forms_two_variables() {
        let a = [re(1.0), re(1.0)];
        let forms = kernel_forms(&a, 1).unwrap();
        assert_eq!(forms.len(), 1);
        // a_2 z_1 - a_1 z_2 = z1 - z2
        assert_eq!(forms[0].coeffs(), &[re(1.0), re(-1.0)]);
        assert_eq!(forms[0].annihilation_residual(&a), scalar::ZERO);
    }

    #[test]
    fn kernel_pivot_must_be_nonzero() {
        let a = [scalar::ZERO, re(1.0)];
        assert!(matches!(
            kernel_forms(&a, 0),
            Err(AnalysisError::PivotIsZero { mu: 0 })
        ));
    }

    #[test]
    fn shift_invariance_accepts_and_rejects() {
        let cvec = [c(0.0, PI), c(0.0, -PI), c(0.0, PI / 2.0)];
        assert!(shift_invariant_form(&[re(1.0), re(1.0), re(0.0)], &cvec).is_ok());
        let err = shift_invariant_form(&[re(1.0), re(0.0), re(0.0)], &cvec).unwrap_err();
        match err {
            AnalysisError::NotShiftInvariant { residual } => {
                assert!(approx_eq(residual, c(0.0, PI), 1e-12));
            }
            other => panic!("unexpected error {other:?}"),
        }
        // the zero form is always invariant
        assert!(shift_invariant_form(&[scalar::ZERO; 3], &cvec).is_ok());
    }

    #[test]
    fn periodic_single_exponential() {
        // n = 1, p = 2 pi i, exponent z1 -> e^{z1}
        let p = [c(0.0, 2.0 * PI)];
        let form = LinearForm::new(alloc::vec![re(1.0)]);
        let f = periodic_exp_poly(&p, &[(form, Polynomial::one(1))]).unwrap();
        assert_eq!(f.term_count(), 1);
        let shifted = f.shift(&p).unwrap();
        assert!(shifted.equals(&f).unwrap());
    }

    #[test]
    fn example_one_auxiliary_exponent_is_not_2s1_periodic() {
        // G = -(2 log(-6) / (pi i)) (z2 + z3); G(2 s1) = 2 log(-6), and
        // e^{2 log(-6)} = 36 != 1, so G is rejected as a 2 s1-periodic piece.
        let g0 = re(-2.0) * crate::scalar::principal_log(re(-6.0)).unwrap()
            / (re(PI) * scalar::I);
        let form = LinearForm::new(alloc::vec![scalar::ZERO, g0, g0]);
        let two_s1 = [scalar::ZERO, c(0.0, -2.0 * PI), c(0.0, PI)];
        let err = periodic_exp_poly(&two_s1, &[(form, Polynomial::one(3))]).unwrap_err();
        match err {
            AnalysisError::NotPeriodic { value, .. } => {
                // value = 2 log(-6) = 2 ln 6 + 2 pi i
                assert!(approx_eq(value, c(2.0 * 6.0f64.ln(), 2.0 * PI), 1e-9));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_spec_is_zero_and_periodic_for_everything() {
        let f = periodic_exp_poly(&[re(1.0), re(2.0)], &[]).unwrap();
        assert!(f.is_identically_zero());
    }

    #[test]
    fn nonconstant_front_rejected() {
        let p = [c(0.0, 2.0 * PI)];
        let form = LinearForm::new(alloc::vec![re(1.0)]);
        let err =
            periodic_exp_poly(&p, &[(form, Polynomial::variable(1, 0).unwrap())]).unwrap_err();
        assert!(matches!(err, AnalysisError::NonConstantFront { index: 0 }));
    }
}
