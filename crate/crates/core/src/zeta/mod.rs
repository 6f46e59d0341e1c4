//! The numerical substrate: ζ and friends, primes, Möbius, critical zeros.

mod arith;
mod bernoulli;
mod expint;
mod gamma;
mod riemann;
mod zeros;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use arith::{factorize, mobius, mobius_table, primes_up_to, smallest_prime_factors};
pub use expint::{complex_ei, e1, log_integral, EULER_GAMMA};
pub use gamma::{digamma, gamma_fn, ln_gamma};
pub use riemann::{hardy_z, xi, zeta, zeta_and_derivative, zeta_derivative, zeta_tail};
pub use zeros::{
    cached_zeros, find_critical_zeros, find_critical_zeros_with_step, first_zeros,
    format_zero_cache, parse_zero_cache, read_zero_cache, write_zero_cache, zero_count_estimate,
    ZeroCache, ZetaZero, SCAN_STEP,
};

/// Complex numbers throughout the crate.
pub type ComplexValue = num_complex::Complex64;

/// Requested absolute accuracy and the budget of series terms allowed to reach it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalAccuracy {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl EvalAccuracy {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol >= 1e-14) || !abs_tol.is_finite() {
            return Err(Error::InvalidParameter(format!("abs_tol must be ≥ 1e-14, got {abs_tol}")));
        }
        if max_terms < 16 {
            return Err(Error::InvalidParameter(format!("max_terms must be ≥ 16, got {max_terms}")));
        }
        Ok(Self { abs_tol, max_terms })
    }
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        Self { abs_tol: 1e-12, max_terms: 1_000_000 }
    }
}
