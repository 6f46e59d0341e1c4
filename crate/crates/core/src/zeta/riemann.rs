//! ζ, ζ′, ξ and the real critical-line function used for zero scanning.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::bernoulli::scaled_b2k;
use super::gamma::{digamma, ln_cos, ln_gamma, ln_sin};
use super::EvalAccuracy;
use crate::error::{Error, Result};

const POLE_GUARD: f64 = 1e-8;

/// Σ_{n ≥ n0} n^{-s} (continued analytically), optionally with its s-derivative.
///
/// Direct summation up to some cut-off `N`, then the Euler–Maclaurin tail.
/// Bernoulli terms are added until they fall below the tolerance; if the
/// asymptotic series turns first, `N` doubles.
fn euler_maclaurin(
    s: Complex64,
    n0: u64,
    acc: &EvalAccuracy,
    derivative: bool,
) -> Result<(Complex64, Complex64)> {
    let bk = scaled_b2k();
    let target = acc.abs_tol * 0.05;
    let mut cut = (s.im.abs().ceil() as u64).max(30).max(n0);
    loop {
        if (cut - n0) as usize > acc.max_terms {
            return Err(Error::AccuracyExceeded {
                abs_tol: acc.abs_tol,
                max_terms: acc.max_terms,
            });
        }
        if let Some(tail) = em_tail(s, cut, &bk, target, derivative) {
            let (mut val, mut der) = tail;
            for n in (n0..cut).rev() {
                let ln = (n as f64).ln();
                let term = (-s * ln).exp();
                val += term;
                if derivative {
                    der -= term * ln;
                }
            }
            return Ok((val, der));
        }
        cut *= 2;
    }
}

fn em_tail(
    s: Complex64,
    n: u64,
    bk: &[f64; 20],
    target: f64,
    derivative: bool,
) -> Option<(Complex64, Complex64)> {
    let ln_n = (n as f64).ln();
    let n_s = (-s * ln_n).exp(); // N^{-s}
    let nf = n as f64;
    let sm1 = s - 1.0;
    let mut val = n_s * nf / sm1 + n_s * 0.5;
    let mut der = if derivative {
        -ln_n * n_s * nf / sm1 - n_s * nf / (sm1 * sm1) - n_s * (0.5 * ln_n)
    } else {
        Complex64::new(0.0, 0.0)
    };

    // P_k = s(s+1)…(s+2k-2), running with its derivative
    let mut p = s;
    let mut dp = Complex64::new(1.0, 0.0);
    let mut pow = n_s / nf; // N^{-s-1}
    let inv_n2 = 1.0 / (nf * nf);
    let mut prev = f64::INFINITY;
    for (k, &b) in bk.iter().enumerate() {
        let term = p * pow * b;
        let dterm = (dp - p * ln_n) * pow * b;
        let mag = if derivative { term.norm().max(dterm.norm()) } else { term.norm() };
        if mag > prev && k > 1 {
            return None;
        }
        val += term;
        der += dterm;
        if mag < target || mag == 0.0 {
            return Some((val, der));
        }
        prev = mag;
        let a1 = s + (2 * k + 1) as f64;
        let a2 = s + (2 * k + 2) as f64;
        dp = dp * a1 * a2 + p * (a1 + a2);
        p = p * a1 * a2;
        pow *= inv_n2;
    }
    None
}

fn check_pole(s: Complex64) -> Result<()> {
    let d = (s - 1.0).norm();
    if d < POLE_GUARD {
        return Err(Error::PoleAtOne { distance: d });
    }
    Ok(())
}

/// log of 2^s π^{s-1} Γ(1-s), the non-trigonometric part of χ(s) in ζ(s) = χ(s)ζ(1-s).
fn ln_chi_base(s: Complex64) -> Complex64 {
    s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_gamma(1.0 - s)
}

/// ζ(s) for s ≠ 1.
pub fn zeta(s: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
    check_pole(s)?;
    if s.re < 0.0 {
        let refl = zeta(1.0 - s, acc)?;
        return Ok(match ln_sin(s * (PI / 2.0)) {
            Some(ls) => (ln_chi_base(s) + ls).exp() * refl,
            None => Complex64::new(0.0, 0.0),
        });
    }
    Ok(euler_maclaurin(s, 1, acc, false)?.0)
}

/// ζ′(s) for s ≠ 1.
pub fn zeta_derivative(s: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
    check_pole(s)?;
    if s.re < 0.0 {
        // ζ(s) = A(s) sin(πs/2) ζ(1-s), A = 2^s π^{s-1} Γ(1-s), A'/A = ln 2π - ψ(1-s)
        let (z1, dz1) = euler_maclaurin(1.0 - s, 1, acc, true)?;
        let la = ln_chi_base(s);
        let half = s * (PI / 2.0);
        let a_sin = ln_sin(half).map_or(Complex64::new(0.0, 0.0), |l| (la + l).exp());
        let a_cos = ln_cos(half).map_or(Complex64::new(0.0, 0.0), |l| (la + l).exp());
        let dlog_a = (2.0 * PI).ln() - digamma(1.0 - s);
        let dchi = a_sin * dlog_a + a_cos * (PI / 2.0);
        return Ok(dchi * z1 - a_sin * dz1);
    }
    Ok(euler_maclaurin(s, 1, acc, true)?.1)
}

/// (ζ(s), ζ′(s)) from one Euler–Maclaurin pass when Re s ≥ 0.
pub fn zeta_and_derivative(s: Complex64, acc: &EvalAccuracy) -> Result<(Complex64, Complex64)> {
    check_pole(s)?;
    if s.re < 0.0 {
        return Ok((zeta(s, acc)?, zeta_derivative(s, acc)?));
    }
    euler_maclaurin(s, 1, acc, true)
}

/// Σ_{n ≥ start} n^{-s}, i.e. the Hurwitz value ζ(s, start).
pub fn zeta_tail(s: Complex64, start: u64, acc: &EvalAccuracy) -> Result<Complex64> {
    check_pole(s)?;
    if start == 0 {
        return Err(Error::InvalidParameter("tail start must be ≥ 1".into()));
    }
    Ok(euler_maclaurin(s, start, acc, false)?.0)
}

/// log of the ξ prefactor π^{-s/2} Γ(s/2).
fn ln_xi_factor(s: Complex64) -> Complex64 {
    -s * (0.5 * PI.ln()) + ln_gamma(s * 0.5)
}

/// ξ(s) = π^{-s/2} Γ(s/2) ζ(s), with simple poles at 0 and 1.
pub fn xi(s: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
    if s.norm() < POLE_GUARD || (s - 1.0).norm() < POLE_GUARD {
        return Err(Error::PoleAtZeroOrOne);
    }
    // at the trivial zeros Γ(s/2) has poles; the product is ξ(1-s)
    if s.re < -0.5 && s.im.abs() < 1e-6 {
        let r = (s.re * 0.5).round() * 2.0;
        if (s.re - r).abs() < 1e-6 {
            return xi(1.0 - s, acc);
        }
    }
    let z = zeta(s, acc)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    Ok((ln_xi_factor(s) + z.ln()).exp())
}

/// Real function of t with the sign of ξ(1/2 + it).
///
/// Equal to ξ(1/2+it)·|π^{-s/2}Γ(s/2)|⁻¹, so it does not underflow at large t.
pub fn hardy_z(t: f64, acc: &EvalAccuracy) -> Result<f64> {
    let s = Complex64::new(0.5, t);
    let phase = ln_xi_factor(s).im;
    let z = zeta(s, acc)?;
    Ok((Complex64::from_polar(1.0, phase) * z).re)
}
