//! The weighted prime-power count f(x) = Σ_{p^n ≤ x} 1/n and its
//! reconstruction from the zeros of ζ:
//!
//! f(x) = Li(x) − Σ_ρ Li(x^ρ) − ∫_x^∞ dt / (t(t²−1) log t) − log 2.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::quad::integrate_to_infinity;
use crate::zeta::{complex_ei, log_integral, primes_up_to, ZetaZero};

pub const COUNT_MAX: f64 = 1e7;

/// Jumps of f up to a cap, for repeated queries.
#[derive(Debug, Clone)]
pub struct PrimePowerTable {
    cap: f64,
    /// (p^n, 1/n) sorted by location
    jumps: Vec<(u64, f64)>,
    /// prefix[k] = Σ of the first k weights
    prefix: Vec<f64>,
}

fn check_range(x: f64) -> Result<()> {
    if !(x > 1.0 && x <= COUNT_MAX) {
        return Err(Error::RangeExceeded { x, min: 1.0, max: COUNT_MAX });
    }
    Ok(())
}

impl PrimePowerTable {
    pub fn new(cap: f64) -> Result<Self> {
        check_range(cap)?;
        let n = cap.floor() as u64;
        let mut jumps = Vec::new();
        for p in primes_up_to(n) {
            let mut q = p;
            let mut k = 1u32;
            while q <= n {
                jumps.push((q, 1.0 / k as f64));
                q = match q.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
                k += 1;
            }
        }
        jumps.sort_by_key(|j| j.0);
        let mut prefix = Vec::with_capacity(jumps.len() + 1);
        prefix.push(0.0);
        for j in &jumps {
            prefix.push(prefix.last().unwrap() + j.1);
        }
        Ok(Self { cap, jumps, prefix })
    }

    /// f(x), half weight when x is itself a prime power.
    pub fn count(&self, x: f64) -> Result<f64> {
        check_range(x)?;
        if x > self.cap {
            return Err(Error::RangeExceeded { x, min: 1.0, max: self.cap });
        }
        let below = self.jumps.partition_point(|j| (j.0 as f64) < x);
        let mut v = self.prefix[below];
        if let Some(&(q, w)) = self.jumps.get(below) {
            if q as f64 == x {
                v += 0.5 * w;
            }
        }
        Ok(v)
    }

    pub fn jumps(&self) -> &[(u64, f64)] {
        &self.jumps
    }
}

/// f(x) = Σ_{p^n ≤ x} 1/n with the half-weight convention, 1 < x ≤ 10⁷.
pub fn prime_power_count(x: f64) -> Result<f64> {
    PrimePowerTable::new(x)?.count(x)
}

/// ∫_x^∞ dt / (t(t²−1) log t), written in u = log t.
pub fn trivial_zero_term(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::InvalidParameter(format!("need x > 1, got {x}")));
    }
    let f = |u: f64| {
        let e = (-2.0 * u).exp();
        e / (u * (1.0 - e))
    };
    Ok(integrate_to_infinity(f, x.ln(), 1e-14, 1e-12)?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub x: f64,
    pub value: f64,
    /// imaginary part left after pairing each ρ with its conjugate
    pub imag_residue: f64,
    pub n_zeros: usize,
}

/// Right-hand side of the explicit formula with the first `n_zeros` zeros and
/// their conjugates.
pub fn explicit_formula_reconstruction(x: f64, n_zeros: usize, zeros: &[ZetaZero]) -> Result<Reconstruction> {
    if !(x > 2.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("need x > 2, got {x}")));
    }
    if n_zeros > zeros.len() {
        return Err(Error::ZeroTableTooSmall { requested: n_zeros, available: zeros.len() });
    }
    let lx = x.ln();
    let terms: Vec<Complex64> = zeros[..n_zeros]
        .par_iter()
        .map(|z| {
            let rho = z.rho();
            Ok(complex_ei(rho * lx)? + complex_ei(rho.conj() * lx)?)
        })
        .collect::<Result<_>>()?;
    let zero_sum: Complex64 = terms.iter().sum();
    let value = Complex64::new(log_integral(x)?, 0.0) - zero_sum - trivial_zero_term(x)? - 2f64.ln();
    Ok(Reconstruction { x, value: value.re, imag_residue: value.im, n_zeros })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityRow {
    pub x: f64,
    pub exact: f64,
    pub reconstructed: f64,
    pub abs_error: f64,
    pub n_zeros: usize,
}

/// Exact count against reconstruction on a grid.
pub fn duality_report(xs: &[f64], n_zeros: usize, zeros: &[ZetaZero]) -> Result<Vec<DualityRow>> {
    let top = xs.iter().cloned().fold(2.0, f64::max);
    let table = PrimePowerTable::new(top)?;
    xs.iter()
        .map(|&x| {
            let exact = table.count(x)?;
            let r = explicit_formula_reconstruction(x, n_zeros, zeros)?;
            Ok(DualityRow { x, exact, reconstructed: r.value, abs_error: (r.value - exact).abs(), n_zeros })
        })
        .collect()
}

pub fn duality_to_csv(rows: &[DualityRow]) -> String {
    let mut out = String::from("x,exact,reconstructed,abs_error,n_zeros\n");
    for r in rows {
        let _ = writeln!(out, "{},{:.12},{:.12},{:.3e},{}", r.x, r.exact, r.reconstructed, r.abs_error, r.n_zeros);
    }
    out
}

/// Midpoints between consecutive prime powers in [lo, hi].
pub fn prime_power_midpoints(lo: f64, hi: f64) -> Result<Vec<f64>> {
    let table = PrimePowerTable::new(hi)?;
    let locs: Vec<f64> = table.jumps().iter().map(|j| j.0 as f64).collect();
    Ok(locs
        .windows(2)
        .map(|w| 0.5 * (w[0] + w[1]))
        .filter(|&m| m >= lo && m <= hi)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{e1, first_zeros, EvalAccuracy};

    #[test]
    fn small_counts() {
        assert!((prime_power_count(10.0).unwrap() - 16.0 / 3.0).abs() < 1e-15);
        assert_eq!(prime_power_count(2.0).unwrap(), 0.5);
        assert_eq!(prime_power_count(1.5).unwrap(), 0.0);
        assert!(matches!(prime_power_count(1.0), Err(Error::RangeExceeded { .. })));
        assert!(matches!(prime_power_count(2e7), Err(Error::RangeExceeded { .. })));
    }

    #[test]
    fn trivial_term_matches_exponential_integral_series() {
        // 1/(e^{2u}-1) = Σ_{n≥1} e^{-2nu}, so the term is Σ_n E1(2n log x)
        for x in [2.5, 10.5, 100.5] {
            let lx: f64 = f64::ln(x);
            let mut oracle = 0.0;
            for n in 1..200 {
                let t = e1(2.0 * n as f64 * lx).unwrap();
                oracle += t;
                if t < 1e-18 {
                    break;
                }
            }
            assert!((trivial_zero_term(x).unwrap() - oracle).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn reconstruction_near_staircase() {
        let zs = first_zeros(50, &EvalAccuracy::default()).unwrap();
        let rows = duality_report(&[10.5, 20.5, 50.5], 50, &zs).unwrap();
        for r in &rows {
            assert!(r.abs_error < 0.5, "{r:?}");
        }
        let r = explicit_formula_reconstruction(100.5, 50, &zs).unwrap();
        assert!(r.imag_residue.abs() < 1e-9);
        assert!(matches!(
            explicit_formula_reconstruction(100.5, 51, &zs),
            Err(Error::ZeroTableTooSmall { requested: 51, available: 50 })
        ));
    }

    #[test]
    fn midpoints_avoid_jumps() {
        let m = prime_power_midpoints(10.0, 20.0).unwrap();
        assert_eq!(m, vec![10.0, 12.0, 14.5, 16.5, 18.0]);
    }
}
