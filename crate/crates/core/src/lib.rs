//! Symbolic-numeric engine for exponential polynomials in several complex
//! variables and the Fermat-type partial differential-difference systems
//! they solve.
//!
//! The crate is built around one closed function class: finite sums of terms
//! `Q(z) * exp(P(z))` with `Q`, `P` polynomials over `C^n` ([`ExpPoly`]).
//! The class is closed under addition, multiplication, partial derivatives
//! and shifts `z -> z + c`, which is exactly what is needed to reduce each
//! system equation to a canonical residual and decide whether it vanishes.
//!
//! Modules:
//! - [`poly`] / [`expoly`]: sparse multivariate polynomials and exponential
//!   polynomials with canonical forms.
//! - [`analysis`]: growth order, kernel linear forms, shift-invariant forms,
//!   periodic exponential polynomials.
//! - [`systems`]: residual construction for the three system families and
//!   the symbolic + sampling verifier.
//! - [`theorems`]: the nonexistence gate, constraint validators, auxiliary
//!   pair solvers and the eight solution constructors.
//! - [`parse`]: text grammar for expressions and complex constants, with a
//!   round-tripping printer.
//!
//! The crate is `no_std` (with `alloc`); the companion CLI crate carries all
//! IO and file formats.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod expoly;
pub mod multi_index;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod systems;
pub mod theorems;

pub use expoly::{ExpPoly, ExpTerm};
pub use multi_index::MultiIndex;
pub use poly::Polynomial;
pub use scalar::Complex64;
