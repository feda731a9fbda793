//! Complex scalar helpers: tolerances, principal branches, finiteness.
//!
//! The coefficient field is double-precision complex. All multi-valued
//! constants (log, sqrt) use principal branches, `Im log in (-pi, pi]`.

use num_complex::Complex;

pub type Complex64 = Complex<f64>;

/// Relative pruning tolerance for stored coefficients.
pub const TAU_COEFF: f64 = 1e-12;

/// Coefficient-wise tolerance when matching exponent polynomials.
pub const TAU_EXP: f64 = 1e-9;

/// `exp` arguments with real part above this overflow double precision.
pub const EXP_OVERFLOW_RE: f64 = 700.0;

/// Errors raised by scalar and polynomial arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraError {
    DimensionMismatch { expected: usize, found: usize },
    IndexOutOfRange { index: usize, dim: usize },
    NonFiniteValue,
    EvalOverflow { exponent_re: f64 },
    LogOfZero,
    DivisionByZero,
}

impl core::fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AlgebraError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            AlgebraError::IndexOutOfRange { index, dim } => {
                write!(f, "variable index {index} out of range for dimension {dim}")
            }
            AlgebraError::NonFiniteValue => write!(f, "non-finite value produced"),
            AlgebraError::EvalOverflow { exponent_re } => {
                write!(f, "exp overflow: exponent real part {exponent_re} exceeds {EXP_OVERFLOW_RE}")
            }
            AlgebraError::LogOfZero => write!(f, "log evaluated at zero"),
            AlgebraError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

pub fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn ensure_finite(z: Complex64) -> Result<Complex64, AlgebraError> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(AlgebraError::NonFiniteValue)
    }
}

/// Principal-branch exponential with overflow guard.
pub fn cexp(z: Complex64) -> Result<Complex64, AlgebraError> {
    if z.re > EXP_OVERFLOW_RE {
        return Err(AlgebraError::EvalOverflow { exponent_re: z.re });
    }
    ensure_finite(z.exp())
}

/// Exact-zero components normalized to +0.0, so negative reals land on the
/// `Im = +pi` side of the branch cut.
fn unsign_zeros(z: Complex64) -> Complex64 {
    Complex::new(
        if z.re == 0.0 { 0.0 } else { z.re },
        if z.im == 0.0 { 0.0 } else { z.im },
    )
}

/// Principal-branch logarithm, `Im in (-pi, pi]`.
pub fn principal_log(z: Complex64) -> Result<Complex64, AlgebraError> {
    if z.norm() == 0.0 {
        return Err(AlgebraError::LogOfZero);
    }
    ensure_finite(unsign_zeros(z).ln())
}

/// Principal-branch square root.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    unsign_zeros(z).sqrt()
}

/// `|a - b| <= tol * (1 + |a| + |b|)`.
pub fn approx_eq(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm() + b.norm())
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex::new(re, im)
}

pub fn re(x: f64) -> Complex64 {
    Complex::new(x, 0.0)
}

pub const I: Complex64 = Complex::new(0.0, 1.0);
pub const ONE: Complex64 = Complex::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex::new(0.0, 0.0);

/// Total order used to sort complex coefficients: (re, im) lexicographic.
/// Stored values are always finite, so the comparison is total.
pub fn cmp_complex(a: Complex64, b: Complex64) -> core::cmp::Ordering {
    match a.re.partial_cmp(&b.re) {
        Some(core::cmp::Ordering::Equal) | None => {
            a.im.partial_cmp(&b.im).unwrap_or(core::cmp::Ordering::Equal)
        }
        Some(ord) => ord,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn principal_log_of_negative_real() {
        let l = principal_log(re(-6.0)).unwrap();
        assert!((l.re - 6.0f64.ln()).abs() < 1e-15);
        assert!((l.im - PI).abs() < 1e-15);
    }

    #[test]
    fn exp_overflow_is_an_error() {
        assert!(matches!(
            cexp(c(701.0, 0.0)),
            Err(AlgebraError::EvalOverflow { .. })
        ));
        assert!(cexp(c(699.0, 1.0)).is_ok());
    }

    #[test]
    fn sqrt_principal_branch() {
        let s = principal_sqrt(re(-4.0));
        assert!(approx_eq(s, c(0.0, 2.0), 1e-15));
    }
}
