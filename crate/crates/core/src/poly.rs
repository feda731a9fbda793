//! Sparse multivariate polynomials over complex double-precision scalars.
//!
//! Arithmetic is exact floating-point: operations combine coefficients and
//! drop exact zeros but do not round. Tolerance-based pruning is applied by
//! the exponential-polynomial layer, which knows the scale of the
//! computation that produced an object.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::multi_index::MultiIndex;
use crate::scalar::{self, cmp_complex, ensure_finite, AlgebraError, Complex64};

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, value: Complex64) -> Self {
        let mut p = Polynomial::zero(dim);
        if value != scalar::ZERO {
            p.terms.insert(MultiIndex::zero(dim), value);
        }
        p
    }

    pub fn one(dim: usize) -> Self {
        Polynomial::constant(dim, scalar::ONE)
    }

    /// The variable `z_k` (0-based).
    pub fn variable(dim: usize, k: usize) -> Result<Self, AlgebraError> {
        if k >= dim {
            return Err(AlgebraError::IndexOutOfRange { index: k, dim });
        }
        let mut p = Polynomial::zero(dim);
        p.terms.insert(MultiIndex::unit(dim, k), scalar::ONE);
        Ok(p)
    }

    /// Degree-1 polynomial `sum_j coeffs[j] * z_j` with zero constant.
    pub fn linear(coeffs: &[Complex64]) -> Self {
        let dim = coeffs.len();
        let mut p = Polynomial::zero(dim);
        for (k, &w) in coeffs.iter().enumerate() {
            if w != scalar::ZERO {
                p.terms.insert(MultiIndex::unit(dim, k), w);
            }
        }
        p
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Complex64)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Polynomial::zero(dim);
        for (idx, coeff) in terms {
            if idx.len() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    found: idx.len(),
                });
            }
            p.add_term(idx, coeff)?;
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree as max `|I|` over stored terms; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|i| i.norm()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// Value of the constant monomial (zero if absent).
    pub fn constant_part(&self) -> Complex64 {
        self.terms
            .get(&MultiIndex::zero(self.dim))
            .copied()
            .unwrap_or(scalar::ZERO)
    }

    /// The same polynomial with its constant monomial removed.
    pub fn without_constant(&self) -> Polynomial {
        let mut p = self.clone();
        p.terms.remove(&MultiIndex::zero(self.dim));
        p
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Complex64 {
        self.terms.get(idx).copied().unwrap_or(scalar::ZERO)
    }

    /// Coefficient of the degree-1 monomial in `z_k`.
    pub fn linear_coefficient(&self, k: usize) -> Complex64 {
        self.coefficient(&MultiIndex::unit(self.dim, k))
    }

    /// True if no stored monomial involves `z_k`.
    pub fn is_free_of(&self, k: usize) -> bool {
        self.terms.keys().all(|i| i.entry(k) == 0)
    }

    pub fn max_coeff_mag(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    fn add_term(&mut self, idx: MultiIndex, coeff: Complex64) -> Result<(), AlgebraError> {
        ensure_finite(coeff)?;
        let entry = self.terms.entry(idx.clone()).or_insert(scalar::ZERO);
        *entry += coeff;
        ensure_finite(*entry)?;
        if *entry == scalar::ZERO {
            self.terms.remove(&idx);
        }
        Ok(())
    }

    fn check_dim(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (idx, coeff) in other.terms.iter() {
            out.add_term(idx.clone(), *coeff)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(-scalar::ONE)
    }

    pub fn scale(&self, w: Complex64) -> Polynomial {
        if w == scalar::ZERO {
            return Polynomial::zero(self.dim);
        }
        let mut p = Polynomial::zero(self.dim);
        for (idx, coeff) in self.terms.iter() {
            let v = coeff * w;
            if v != scalar::ZERO {
                p.terms.insert(idx.clone(), v);
            }
        }
        p
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.dim);
        for (ia, ca) in self.terms.iter() {
            for (ib, cb) in other.terms.iter() {
                out.add_term(ia.add(ib), ca * cb)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial, AlgebraError> {
        let mut acc = Polynomial::one(self.dim);
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

    /// Partial derivative with respect to `z_k` (0-based).
    pub fn derivative(&self, k: usize) -> Result<Polynomial, AlgebraError> {
        if k >= self.dim {
            return Err(AlgebraError::IndexOutOfRange { index: k, dim: self.dim });
        }
        let mut out = Polynomial::zero(self.dim);
        for (idx, coeff) in self.terms.iter() {
            if let Some(down) = idx.step_down(k) {
                out.add_term(down, coeff * scalar::re(idx.entry(k) as f64))?;
            }
        }
        Ok(out)
    }

    /// `p(z + c)`, expanded by binomials.
    pub fn shift(&self, c: &[Complex64]) -> Result<Polynomial, AlgebraError> {
        if c.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: c.len(),
            });
        }
        let mut out = Polynomial::zero(self.dim);
        for (idx, coeff) in self.terms.iter() {
            // expand prod_j (z_j + c_j)^{e_j} one variable at a time
            let mut partial: Vec<(MultiIndex, Complex64)> =
                alloc::vec![(MultiIndex::zero(self.dim), *coeff)];
            for j in 0..self.dim {
                let e = idx.entry(j);
                if e == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                for (base_idx, base_coeff) in partial.iter() {
                    let mut binom = 1.0f64;
                    let mut cpow = scalar::ONE;
                    // i runs over the power of z_j kept; c_j supplies e - i
                    for i in (0..=e).rev() {
                        let k_choose = e - i;
                        if k_choose > 0 {
                            binom = binom * ((e - k_choose + 1) as f64) / (k_choose as f64);
                            cpow *= c[j];
                        }
                        let mut entries = base_idx.entries().to_vec();
                        entries[j] += i;
                        next.push((
                            MultiIndex::new(entries),
                            base_coeff * scalar::re(binom) * cpow,
                        ));
                        if i == 0 {
                            break;
                        }
                    }
                }
                partial = next;
            }
            for (i, w) in partial {
                out.add_term(i, w)?;
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64, AlgebraError> {
        if z.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: z.len(),
            });
        }
        let mut acc = scalar::ZERO;
        for (idx, coeff) in self.terms.iter() {
            let mut m = *coeff;
            for (j, &e) in idx.entries().iter().enumerate() {
                if e > 0 {
                    m *= z[j].powu(e);
                }
            }
            acc += m;
        }
        ensure_finite(acc)
    }

    /// Drop coefficients with modulus at or below `floor`.
    pub fn prune_below(&mut self, floor: f64) {
        if floor <= 0.0 {
            return;
        }
        self.terms.retain(|_, c| c.norm() > floor);
    }

    /// Prune relative to this polynomial's own largest coefficient.
    pub fn canonical(mut self) -> Polynomial {
        let floor = scalar::TAU_COEFF * self.max_coeff_mag();
        self.prune_below(floor);
        self
    }

    /// Total order: graded-lex on monomials from the leading term down,
    /// ties broken by (re, im) on coefficients, shorter polynomial first.
    pub fn cmp_canonical(&self, other: &Polynomial) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ia, ca)), Some((ib, cb))) => {
                    match ia.cmp(ib).then_with(|| cmp_complex(*ca, *cb)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
            }
        }
    }

    /// Coefficient-wise match within `tol * (1 + |a| + |b|)`.
    pub fn approx_eq(&self, other: &Polynomial, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let keys: alloc::collections::BTreeSet<&MultiIndex> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| {
            scalar::approx_eq(self.coefficient(k), other.coefficient(k), tol)
        })
    }

    /// Human-oriented rendering used in diagnostics; the grammar-exact
    /// printer lives in [`crate::parse`].
    pub fn describe(&self) -> String {
        crate::parse::print_polynomial(self)
    }
}
