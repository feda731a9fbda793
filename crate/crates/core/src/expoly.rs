//! Exponential polynomials: finite sums of terms `Q(z) * exp(P(z))`.
//!
//! The class is closed under addition, multiplication, partial derivatives
//! and shifts, so every residual computed by the systems layer stays inside
//! it. Identity testing reduces to canonical form: exponentials with
//! pairwise non-constant exponent differences are linearly independent over
//! polynomial coefficients, so an exponential polynomial vanishes
//! identically iff its canonical form has no terms.
//!
//! Canonical form invariants:
//! - every exponent polynomial has exactly zero constant term (constants are
//!   folded into the front as `exp(k)` factors at construction);
//! - no two terms share an exponent (coefficient-wise within `TAU_EXP`);
//! - no term has an identically-zero front;
//! - terms are sorted by a total order on exponent polynomials.
//!
//! Coefficient pruning is relative: each operation passes a scale hint
//! derived from its inputs, so residues left behind by catastrophic
//! cancellation (the normal outcome of a residual that is mathematically
//! zero) are removed, while genuinely small coefficients in small objects
//! survive.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::poly::Polynomial;
use crate::scalar::{self, cexp, AlgebraError, Complex64, TAU_COEFF, TAU_EXP};

/// One `front * exp(exponent)` term.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub front: Polynomial,
    pub exponent: Polynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpPoly {
    dim: usize,
    terms: Vec<ExpTerm>,
}

impl ExpPoly {
    pub fn zero(dim: usize) -> Self {
        ExpPoly { dim, terms: Vec::new() }
    }

    pub fn constant(dim: usize, value: Complex64) -> Result<Self, AlgebraError> {
        Self::from_raw_terms(
            dim,
            alloc::vec![ExpTerm {
                front: Polynomial::constant(dim, value),
                exponent: Polynomial::zero(dim),
            }],
            0.0,
        )
    }

    pub fn one(dim: usize) -> Result<Self, AlgebraError> {
        Self::constant(dim, scalar::ONE)
    }

    /// The variable `z_k` as an exponential polynomial (0-based index).
    pub fn variable(dim: usize, k: usize) -> Result<Self, AlgebraError> {
        Ok(Self::from_polynomial(Polynomial::variable(dim, k)?))
    }

    /// A pure polynomial, i.e. `p * exp(0)`.
    pub fn from_polynomial(p: Polynomial) -> Self {
        let dim = p.dim();
        ExpPoly {
            dim,
            terms: if p.is_zero() {
                Vec::new()
            } else {
                alloc::vec![ExpTerm { front: p, exponent: Polynomial::zero(dim) }]
            },
        }
    }

    /// `exp(p)`; the constant part of `p` folds into the front.
    pub fn exp_of(p: Polynomial) -> Result<Self, AlgebraError> {
        let dim = p.dim();
        Self::from_raw_terms(
            dim,
            alloc::vec![ExpTerm { front: Polynomial::one(dim), exponent: p }],
            0.0,
        )
    }

    /// `front * exp(exponent)`.
    pub fn term(front: Polynomial, exponent: Polynomial) -> Result<Self, AlgebraError> {
        if front.dim() != exponent.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: front.dim(),
                found: exponent.dim(),
            });
        }
        let dim = front.dim();
        Self::from_raw_terms(dim, alloc::vec![ExpTerm { front, exponent }], 0.0)
    }

    /// Canonicalize a raw term list. `scale_hint` is the magnitude of the
    /// computation that produced the terms; the pruning floor is
    /// `TAU_COEFF * max(own magnitude, scale_hint)`.
    pub fn from_raw_terms(
        dim: usize,
        raw: Vec<ExpTerm>,
        scale_hint: f64,
    ) -> Result<Self, AlgebraError> {
        let mut folded: Vec<ExpTerm> = Vec::with_capacity(raw.len());
        for t in raw {
            if t.front.dim() != dim || t.exponent.dim() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    found: t.front.dim().max(t.exponent.dim()),
                });
            }
            if t.front.is_zero() {
                continue;
            }
            let k = t.exponent.constant_part();
            if k == scalar::ZERO {
                folded.push(t);
            } else {
                folded.push(ExpTerm {
                    front: t.front.scale(cexp(k)?),
                    exponent: t.exponent.without_constant(),
                });
            }
        }

        folded.sort_by(|a, b| a.exponent.cmp_canonical(&b.exponent));

        let mut merged: Vec<ExpTerm> = Vec::with_capacity(folded.len());
        for t in folded {
            match merged.last_mut() {
                Some(last) if last.exponent.approx_eq(&t.exponent, TAU_EXP) => {
                    last.front = last.front.add(&t.front)?;
                }
                _ => merged.push(t),
            }
        }

        let own: f64 = merged
            .iter()
            .map(|t| t.front.max_coeff_mag())
            .fold(0.0, f64::max);
        let floor = TAU_COEFF * own.max(scale_hint);
        merged.retain_mut(|t| {
            t.front.prune_below(floor);
            !t.front.is_zero()
        });

        Ok(ExpPoly { dim, terms: merged })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Canonical form with no terms is the zero function; by linear
    /// independence of the exponentials this is also necessary.
    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest front coefficient modulus across all terms.
    pub fn magnitude(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.front.max_coeff_mag())
            .fold(0.0, f64::max)
    }

    fn check_dim(&self, other: &ExpPoly) -> Result<(), AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ExpPoly) -> Result<ExpPoly, AlgebraError> {
        self.check_dim(other)?;
        let mut raw = self.terms.clone();
        raw.extend(other.terms.iter().cloned());
        ExpPoly::from_raw_terms(self.dim, raw, self.magnitude().max(other.magnitude()))
    }

    pub fn sub(&self, other: &ExpPoly) -> Result<ExpPoly, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpPoly {
        self.scale(-scalar::ONE)
    }

    pub fn scale(&self, w: Complex64) -> ExpPoly {
        if w == scalar::ZERO {
            return ExpPoly::zero(self.dim);
        }
        ExpPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    front: t.front.scale(w),
                    exponent: t.exponent.clone(),
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &ExpPoly) -> Result<ExpPoly, AlgebraError> {
        self.check_dim(other)?;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                raw.push(ExpTerm {
                    front: a.front.mul(&b.front)?,
                    exponent: a.exponent.add(&b.exponent)?,
                });
            }
        }
        ExpPoly::from_raw_terms(self.dim, raw, self.magnitude() * other.magnitude())
    }

    pub fn pow(&self, e: u32) -> Result<ExpPoly, AlgebraError> {
        let mut acc = ExpPoly::one(self.dim)?;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `d/dz_k`: each term maps to `(dQ + Q * dP) * exp(P)`.
    pub fn partial_derivative(&self, k: usize) -> Result<ExpPoly, AlgebraError> {
        if k >= self.dim {
            return Err(AlgebraError::IndexOutOfRange { index: k, dim: self.dim });
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        let mut hint = 0.0f64;
        for t in &self.terms {
            let dp = t.exponent.derivative(k)?;
            hint = hint.max(t.front.max_coeff_mag() * (1.0 + dp.max_coeff_mag()));
            let front = t.front.derivative(k)?.add(&t.front.mul(&dp)?)?;
            raw.push(ExpTerm {
                front,
                exponent: t.exponent.clone(),
            });
        }
        ExpPoly::from_raw_terms(self.dim, raw, hint)
    }

    /// Iterated partial derivative `∂^I`.
    pub fn derive_multi(&self, index: &crate::multi_index::MultiIndex) -> Result<ExpPoly, AlgebraError> {
        if index.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: index.len(),
            });
        }
        let mut out = self.clone();
        for (k, &e) in index.entries().iter().enumerate() {
            for _ in 0..e {
                out = out.partial_derivative(k)?;
            }
        }
        Ok(out)
    }

    /// `f(z + c)`. The new constant part of each exponent folds into the
    /// front, so `shift(exp(P), c) = exp(P(c)) * exp(P - P(0-part))`.
    pub fn shift(&self, c: &[Complex64]) -> Result<ExpPoly, AlgebraError> {
        if c.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: c.len(),
            });
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            raw.push(ExpTerm {
                front: t.front.shift(c)?,
                exponent: t.exponent.shift(c)?,
            });
        }
        ExpPoly::from_raw_terms(self.dim, raw, 0.0)
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64, AlgebraError> {
        Ok(self.evaluate_with_scale(z)?.0)
    }

    /// Value together with the sum of term magnitudes at the point; the
    /// scale bounds the cancellation inside the sum and hence the absolute
    /// precision of the value (roughly `eps * scale`).
    pub fn evaluate_with_scale(
        &self,
        z: &[Complex64],
    ) -> Result<(Complex64, f64), AlgebraError> {
        if z.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: z.len(),
            });
        }
        let mut acc = scalar::ZERO;
        let mut scale = 0.0f64;
        for t in &self.terms {
            let q = t.front.evaluate(z)?;
            let p = t.exponent.evaluate(z)?;
            let term = q * cexp(p)?;
            scale += term.norm();
            acc += term;
        }
        scalar::ensure_finite(acc)?;
        if !scale.is_finite() {
            return Err(AlgebraError::NonFiniteValue);
        }
        Ok((acc, scale))
    }

    /// Equality as functions: the difference canonicalizes to zero.
    pub fn equals(&self, other: &ExpPoly) -> Result<bool, AlgebraError> {
        Ok(self.sub(other)?.is_identically_zero())
    }

    /// Total order on canonical terms, used by the printer.
    pub fn cmp_terms(a: &ExpTerm, b: &ExpTerm) -> Ordering {
        a.exponent.cmp_canonical(&b.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c, re, I};

    fn dim3_form(coeffs: [f64; 3]) -> Polynomial {
        Polynomial::linear(&[re(coeffs[0]), re(coeffs[1]), re(coeffs[2])])
    }

    #[test]
    fn opposite_terms_cancel() {
        let l = Polynomial::variable(1, 0).unwrap();
        let f = ExpPoly::exp_of(l.clone()).unwrap();
        let g = f.scale(-scalar::ONE);
        assert!(f.add(&g).unwrap().is_identically_zero());
    }

    #[test]
    fn identical_exponents_merge() {
        // e^{z1 + 2*pi*i*0} + e^{z1} = 2 e^{z1}
        let l = Polynomial::variable(1, 0).unwrap();
        let f = ExpPoly::exp_of(l.clone()).unwrap();
        let s = f.add(&f).unwrap();
        assert_eq!(s.term_count(), 1);
        assert_eq!(s.terms()[0].front.constant_part(), re(2.0));
    }

    #[test]
    fn constant_in_exponent_folds_into_front() {
        // e^{z1 + log 2} + e^{z1} = 3 e^{z1}
        let l = Polynomial::variable(1, 0).unwrap();
        let la = l.add(&Polynomial::constant(1, re(2.0f64.ln()))).unwrap();
        let f = ExpPoly::exp_of(la).unwrap();
        let g = ExpPoly::exp_of(l).unwrap();
        let s = f.add(&g).unwrap();
        assert_eq!(s.term_count(), 1);
        assert!(scalar::approx_eq(s.terms()[0].front.constant_part(), re(3.0), 1e-12));
    }

    #[test]
    fn product_of_inverse_exponentials_is_one() {
        let l = dim3_form([3.0, -3.0, 3.0]);
        let f = ExpPoly::exp_of(l.clone()).unwrap();
        let g = ExpPoly::exp_of(l.neg()).unwrap();
        let p = f.mul(&g).unwrap();
        assert_eq!(p.term_count(), 1);
        assert!(p.terms()[0].exponent.is_zero());
        assert!(scalar::approx_eq(p.terms()[0].front.constant_part(), re(1.0), 1e-12));
    }

    #[test]
    fn binomial_square_of_sinh_like_pair() {
        // (e^L - e^{-L})^2 = e^{2L} - 2 + e^{-2L}
        let l = dim3_form([1.0, 0.0, 0.0]);
        let f = ExpPoly::exp_of(l.clone())
            .unwrap()
            .sub(&ExpPoly::exp_of(l.neg()).unwrap())
            .unwrap();
        let sq = f.pow(2).unwrap();
        assert_eq!(sq.term_count(), 3);
        let constant_term = sq
            .terms()
            .iter()
            .find(|t| t.exponent.is_zero())
            .expect("cross term");
        assert!(scalar::approx_eq(constant_term.front.constant_part(), re(-2.0), 1e-12));
    }

    #[test]
    fn mixed_front_product() {
        // (z1 e^{z2}) * z2 = z1 z2 e^{z2}
        let z1 = ExpPoly::variable(2, 0).unwrap();
        let e_z2 = ExpPoly::exp_of(Polynomial::variable(2, 1).unwrap()).unwrap();
        let z2 = ExpPoly::variable(2, 1).unwrap();
        let p = z1.mul(&e_z2).unwrap().mul(&z2).unwrap();
        assert_eq!(p.term_count(), 1);
        assert_eq!(p.terms()[0].front.degree(), 2);
        assert_eq!(p.terms()[0].exponent.degree(), 1);
    }

    #[test]
    fn derivative_of_polynomial_term() {
        // d/dz1 (z1^2 z2) = 2 z1 z2
        let z1 = ExpPoly::variable(2, 0).unwrap();
        let z2 = ExpPoly::variable(2, 1).unwrap();
        let f = z1.pow(2).unwrap().mul(&z2).unwrap();
        let d = f.partial_derivative(0).unwrap();
        let expected = z1.mul(&z2).unwrap().scale(re(2.0));
        assert!(d.equals(&expected).unwrap());
    }

    #[test]
    fn derivative_of_exponential_term() {
        // d/dz1 e^{3z1 - 3z2 + 3z3} = 3 e^{3z1 - 3z2 + 3z3}
        let f = ExpPoly::exp_of(dim3_form([3.0, -3.0, 3.0])).unwrap();
        let d = f.partial_derivative(0).unwrap();
        assert!(d.equals(&f.scale(re(3.0))).unwrap());
    }

    #[test]
    fn shift_folds_exponent_constant() {
        // shift(e^L, c) = e^{L(c)} e^L for linear L
        use core::f64::consts::PI;
        let l = dim3_form([3.0, -3.0, 3.0]);
        let f = ExpPoly::exp_of(l).unwrap();
        let cvec = [c(0.0, PI), c(0.0, -PI), c(0.0, PI / 2.0)];
        let s = f.shift(&cvec).unwrap();
        assert_eq!(s.term_count(), 1);
        // L(c) = 7.5 pi i, e^{7.5 pi i} = -i
        assert!(scalar::approx_eq(s.terms()[0].front.constant_part(), -I, 1e-12));
    }

    #[test]
    fn evaluate_simple_cases() {
        let f = ExpPoly::exp_of(Polynomial::variable(1, 0).unwrap()).unwrap();
        assert!(scalar::approx_eq(f.evaluate(&[scalar::ZERO]).unwrap(), re(1.0), 1e-15));

        // 2 z1 e^{z2} at (3, 0) -> 6
        let g = ExpPoly::term(
            Polynomial::variable(2, 0).unwrap().scale(re(2.0)),
            Polynomial::variable(2, 1).unwrap(),
        )
        .unwrap();
        assert!(scalar::approx_eq(g.evaluate(&[re(3.0), scalar::ZERO]).unwrap(), re(6.0), 1e-15));
    }

    #[test]
    fn zero_test_constant_folding() {
        // e^{L + A} - e^A e^L = 0
        let l = dim3_form([1.0, 2.0, -1.0]);
        let a = c(0.3, 0.7);
        let with_const = ExpPoly::exp_of(l.add(&Polynomial::constant(3, a)).unwrap()).unwrap();
        let folded = ExpPoly::exp_of(l).unwrap().scale(a.exp());
        assert!(with_const.equals(&folded).unwrap());
    }

    #[test]
    fn distinct_exponentials_do_not_cancel() {
        let f = ExpPoly::exp_of(Polynomial::variable(2, 0).unwrap()).unwrap();
        let g = ExpPoly::exp_of(Polynomial::variable(2, 1).unwrap()).unwrap();
        assert!(!f.sub(&g).unwrap().is_identically_zero());
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let l = dim3_form([1.0, -2.0, 0.5]);
        let f = ExpPoly::exp_of(l.clone())
            .unwrap()
            .add(&ExpPoly::term(dim3_form([0.0, 1.0, 0.0]), l.neg()).unwrap())
            .unwrap();
        let again = ExpPoly::from_raw_terms(3, f.terms().to_vec(), 0.0).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let f = ExpPoly::variable(2, 0).unwrap();
        let g = ExpPoly::variable(3, 0).unwrap();
        assert!(matches!(f.add(&g), Err(AlgebraError::DimensionMismatch { .. })));
    }
}
