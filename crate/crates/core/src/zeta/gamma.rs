//! Γ, log Γ and ψ on the complex plane.
//!
//! `ln_gamma` is a Stirling series after an upward shift, with the reflection
//! formula for the left half-plane. Its imaginary part is only defined modulo
//! 2π; every caller exponentiates it, so the branch never matters.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::bernoulli::B2K;
use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_RADIUS: f64 = 15.0;

/// Principal-ish log of Γ(z); imaginary part is correct modulo 2π.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        let ls = ln_sin(z * PI).unwrap_or(Complex64::new(f64::NEG_INFINITY, 0.0));
        return Complex64::new(PI.ln(), 0.0) - ls - ln_gamma(1.0 - z);
    }
    let mut shift = 0usize;
    while (z + shift as f64).norm() < STIRLING_RADIUS {
        shift += 1;
    }
    let zs = z + shift as f64;
    let mut acc = (zs - 0.5) * zs.ln() - zs + LN_SQRT_2PI;
    let inv = zs.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (k, b) in B2K.iter().enumerate().take(12) {
        let two_k = 2.0 * (k + 1) as f64;
        acc += pow * (b / (two_k * (two_k - 1.0)));
        pow *= inv2;
    }
    if shift > 0 {
        let mut prod = Complex64::new(1.0, 0.0);
        for k in 0..shift {
            prod *= z + k as f64;
        }
        acc -= prod.ln();
    }
    acc
}

fn nonpositive_integer(s: Complex64) -> Option<i64> {
    if s.re <= 0.5 && s.im.abs() < 1e-12 {
        let r = s.re.round();
        if r <= 0.0 && (s.re - r).abs() < 1e-12 {
            return Some(r as i64);
        }
    }
    None
}

/// Γ(s), relative accuracy ~1e-13 for |s| ≤ 100.
pub fn gamma_fn(s: Complex64) -> Result<Complex64> {
    if let Some(n) = nonpositive_integer(s) {
        return Err(Error::PoleAtNonpositiveInteger(n));
    }
    if s.re < 0.5 {
        let denom = (s * PI).sin() * gamma_fn(1.0 - s)?;
        return Ok(Complex64::new(PI, 0.0) / denom);
    }
    // exact factorials keep Γ(n) free of exp/ln rounding
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re <= 30.0 {
        let mut f = 1.0;
        for k in 2..(s.re as u64) {
            f *= k as f64;
        }
        return Ok(Complex64::new(f, 0.0));
    }
    Ok(ln_gamma(s).exp())
}

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pz = z * PI;
        let cot = cot(pz);
        return digamma(1.0 - z) - cot * PI;
    }
    let mut shift = 0usize;
    let mut corr = Complex64::new(0.0, 0.0);
    while (z + shift as f64).norm() < STIRLING_RADIUS {
        corr += (z + shift as f64).inv();
        shift += 1;
    }
    let zs = z + shift as f64;
    let inv = zs.inv();
    let inv2 = inv * inv;
    let mut acc = zs.ln() - inv * 0.5;
    let mut pow = inv2;
    for (k, b) in B2K.iter().enumerate().take(12) {
        let two_k = 2.0 * (k + 1) as f64;
        acc -= pow * (b / two_k);
        pow *= inv2;
    }
    acc - corr
}

/// log sin(z), stable for large |Im z|. `None` when sin(z) is exactly zero.
pub fn ln_sin(z: Complex64) -> Option<Complex64> {
    const SWITCH: f64 = 30.0;
    let i = Complex64::i();
    if z.im > SWITCH {
        // sin z = -e^{-iz}/(2i) (1 - e^{2iz})
        let lead = -i * z - Complex64::new(2.0f64.ln(), PI / 2.0);
        let corr = (1.0 - (2.0 * i * z).exp()).ln();
        return Some(lead + corr + Complex64::new(0.0, PI));
    }
    if z.im < -SWITCH {
        // sin z = e^{iz}/(2i) (1 - e^{-2iz})
        let lead = i * z - Complex64::new(2.0f64.ln(), PI / 2.0);
        let corr = (1.0 - (-2.0 * i * z).exp()).ln();
        return Some(lead + corr);
    }
    let s = z.sin();
    if s == Complex64::new(0.0, 0.0) {
        None
    } else {
        Some(s.ln())
    }
}

pub fn ln_cos(z: Complex64) -> Option<Complex64> {
    ln_sin(z + PI / 2.0)
}

pub fn cot(z: Complex64) -> Complex64 {
    if z.im > 20.0 {
        return Complex64::new(0.0, -1.0);
    }
    if z.im < -20.0 {
        return Complex64::new(0.0, 1.0);
    }
    z.cos() / z.sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_forms() {
        assert!((gamma_fn(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!((gamma_fn(c(5.0, 0.0)).unwrap() - 24.0).norm() < 1e-12);
        let half = gamma_fn(c(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt()).abs() < 1e-14 * PI.sqrt());
        // Γ(-1/2) = -2√π
        let mh = gamma_fn(c(-0.5, 0.0)).unwrap();
        assert!((mh.re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn poles() {
        assert_eq!(gamma_fn(c(0.0, 0.0)), Err(Error::PoleAtNonpositiveInteger(0)));
        assert_eq!(gamma_fn(c(-3.0, 0.0)), Err(Error::PoleAtNonpositiveInteger(-3)));
    }

    #[test]
    fn recurrence_and_reflection() {
        for &z in &[c(0.3, 2.0), c(2.7, -5.0), c(-3.4, 1.1), c(10.0, 40.0), c(0.5, 0.0)] {
            let lhs = gamma_fn(z + 1.0).unwrap();
            let rhs = z * gamma_fn(z).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm(), "{z}");
        }
        // |Γ(1/2 + it)|² = π / cosh(πt)
        for &t in &[0.5, 3.0, 10.0, 30.0] {
            let g = gamma_fn(c(0.5, t)).unwrap();
            let expect = PI / (PI * t).cosh();
            assert!((g.norm_sqr() - expect).abs() <= 1e-12 * expect);
        }
    }

    #[test]
    fn large_argument_log_gamma_matches_modulus_identity() {
        // |Γ(it)|² = π / (t sinh πt), checked in logs to avoid underflow
        for &t in &[50.0, 500.0, 5000.0] {
            let lg = ln_gamma(c(0.0, t));
            let expect = 0.5 * (PI.ln() - t.ln() - (PI * t - 2f64.ln() + (1.0 - (-2.0 * PI * t).exp()).ln()));
            assert!((lg.re - expect).abs() < 1e-9, "t={t}: {} vs {}", lg.re, expect);
        }
    }

    #[test]
    fn digamma_values() {
        // ψ(1) = -γ
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).re + euler).abs() < 1e-14);
        // ψ(z+1) = ψ(z) + 1/z
        for &z in &[c(0.2, 0.3), c(-2.5, 4.0), c(7.0, -11.0)] {
            let d = digamma(z + 1.0) - digamma(z) - z.inv();
            assert!(d.norm() < 1e-12, "{z}: {d}");
        }
        // finite-difference check of ψ = (ln Γ)'
        let z = c(2.3, 1.7);
        let h = 1e-5;
        let fd = (ln_gamma(z + h) - ln_gamma(z - h)) / (2.0 * h);
        assert!((fd - digamma(z)).norm() < 1e-8);
    }

    #[test]
    fn ln_sin_matches_direct_where_safe() {
        for &z in &[c(0.3, 29.0), c(1.2, -29.5), c(2.0, 31.0), c(-1.0, -32.0)] {
            let direct = z.sin().ln();
            let ours = ln_sin(z).unwrap();
            let diff = (direct - ours).exp();
            assert!((diff - 1.0).norm() < 1e-12, "{z}: {diff}");
        }
        assert!(ln_sin(c(0.0, 0.0)).is_none());
    }
}
