//! Shared fixtures and random-object builders for the integration suites.

#![allow(dead_code)]

use pdde_core::expoly::ExpTerm;
use pdde_core::parse::parse_exppoly;
use pdde_core::scalar::Complex64;
use pdde_core::systems::{E1Params, E4Params, SystemParams};
use pdde_core::{ExpPoly, MultiIndex, Polynomial};
use rand_core::{RngCore, SeedableRng};

pub const EX1_F1: &str =
    "(1/6)*exp(3*z1-3*z2+3*z3)+(1/6)*exp(-3*z1+3*z2-3*z3)+exp((-2*log(-6)/(pi*i))*(z2+z3))";
pub const EX1_F2: &str =
    "(i/6)*exp(-3*z1+3*z2-3*z3)-(i/6)*exp(3*z1-3*z2+3*z3)-exp((-2*log(-6)/(pi*i))*(z2+z3))";

pub const EX2_F1: &str = "(-1/60)*exp(3*z1+z2-2*z3+5*z4)+(1/60)*exp(-3*z1-z2+2*z3-5*z4)\
+exp((15*log(2/3)/(8*pi*i))*(-8*z1+z2+z3+z4))";
pub const EX2_F2: &str = "(i/60)*exp(3*z1+z2-2*z3+5*z4)-(i/60)*exp(-3*z1-z2+2*z3-5*z4)\
-exp((15*log(2/3)/(8*pi*i))*(-8*z1+z2+z3+z4))";

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// Example-1 pair in three variables.
pub fn example_one_pair() -> (ExpPoly, ExpPoly) {
    (
        parse_exppoly(EX1_F1, 3).expect("fixture f1 parses"),
        parse_exppoly(EX1_F2, 3).expect("fixture f2 parses"),
    )
}

/// Example-1 system: a = (i, -18, 3, 2), c = (pi i, -pi i, pi i/2), mu = 1.
pub fn example_one_system() -> SystemParams {
    use core::f64::consts::PI;
    SystemParams::E1(E1Params {
        dim: 3,
        c: vec![c(0.0, PI), c(0.0, -PI), c(0.0, PI / 2.0)],
        mu: 0,
        a: [i(), re(-18.0), re(3.0), re(2.0)],
    })
}

/// Example-2 pair in four variables.
pub fn example_two_pair() -> (ExpPoly, ExpPoly) {
    (
        parse_exppoly(EX2_F1, 4).expect("fixture f1 parses"),
        parse_exppoly(EX2_F2, 4).expect("fixture f2 parses"),
    )
}

/// Example-2 system: directional coefficients (1, -2, 3, 7), then
/// a5 = -12i, a6 = -18i, with c = (pi i/3, 2 pi i, pi i, pi i/5).
pub fn example_two_system() -> SystemParams {
    use core::f64::consts::PI;
    SystemParams::E4(E4Params {
        dim: 4,
        c: vec![
            c(0.0, PI / 3.0),
            c(0.0, 2.0 * PI),
            c(0.0, PI),
            c(0.0, PI / 5.0),
        ],
        a: vec![
            re(1.0),
            re(-2.0),
            re(3.0),
            re(7.0),
            c(0.0, -12.0),
            c(0.0, -18.0),
        ],
    })
}

/// Seeded random generator for test objects.
pub struct Rand {
    rng: rand_chacha::ChaCha8Rng,
}

impl Rand {
    pub fn new(seed: u64) -> Self {
        Rand {
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.rng.next_u64() % n as u64) as usize
    }

    pub fn complex(&mut self, rmin: f64, rmax: f64) -> Complex64 {
        let r = self.in_range(rmin, rmax);
        let t = self.in_range(0.0, core::f64::consts::TAU);
        c(r * t.cos(), r * t.sin())
    }

    /// Point with coordinate moduli at most `radius`.
    pub fn point(&mut self, dim: usize, radius: f64) -> Vec<Complex64> {
        (0..dim).map(|_| self.complex(0.0, radius)).collect()
    }

    /// Sparse polynomial of bounded degree with bounded coefficients.
    pub fn polynomial(
        &mut self,
        dim: usize,
        max_terms: usize,
        max_degree: u32,
        coeff_max: f64,
    ) -> Polynomial {
        let count = 1 + self.below(max_terms);
        let mut terms = Vec::with_capacity(count);
        for _ in 0..count {
            let mut idx = vec![0u32; dim];
            let mut left = max_degree;
            for e in idx.iter_mut() {
                if left == 0 {
                    break;
                }
                *e = self.below(left as usize + 1) as u32;
                left -= *e;
            }
            terms.push((MultiIndex::new(idx), self.complex(0.1, coeff_max)));
        }
        Polynomial::from_terms(dim, terms).unwrap()
    }

    /// Random exponential polynomial: up to `max_terms` terms, exponent
    /// degree at most 2 with zero constant part, bounded coefficients.
    pub fn expoly(&mut self, dim: usize, max_terms: usize) -> ExpPoly {
        let count = 1 + self.below(max_terms);
        let mut raw = Vec::with_capacity(count);
        for _ in 0..count {
            let front = self.polynomial(dim, 3, 2, 1.5);
            let exponent = self.polynomial(dim, 2, 2, 0.8).without_constant();
            raw.push(ExpTerm { front, exponent });
        }
        ExpPoly::from_raw_terms(dim, raw, 0.0).unwrap()
    }
}
