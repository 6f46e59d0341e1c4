//! Exponential integral Ei on ℂ and the logarithmic integral Li on (1, ∞).
//!
//! Ei uses the branch with its cut on the negative real axis,
//! Ei(z) = γ + log z + Σ z^k/(k·k!), so that Li(x^ρ) = Ei(ρ log x).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn ei_series(z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..500 {
        term *= z / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum + z.ln() + EULER_GAMMA
}

fn ei_asymptotic(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let next = term * inv * k as f64;
        let m = next.norm();
        if m >= prev || m < 1e-17 {
            break;
        }
        term = next;
        sum += term;
        prev = m;
    }
    z.exp() * inv * sum
}

/// E₁(w) by the modified Lentz continued fraction, |arg w| < π.
fn e1_continued_fraction(w: Complex64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let mut b = w + 1.0;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..20_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = (d * an + b).inv();
        c = b + c.inv() * an;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h * (-w).exp()
}

/// Ei(z) for z ≠ 0.
pub fn complex_ei(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::EiAtZero);
    }
    let r = z.norm();
    let near_positive_axis = z.re > 0.0 && z.im.abs() <= z.re;
    if r <= 4.0 || (near_positive_axis && r <= 40.0) {
        return Ok(ei_series(z));
    }
    let jump = Complex64::new(0.0, PI * sign(z.im));
    if near_positive_axis {
        return Ok(ei_asymptotic(z) + jump);
    }
    Ok(-e1_continued_fraction(-z) + jump)
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// E₁(x) for real x > 0.
pub fn e1(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::InvalidParameter(format!("E1 needs x > 0, got {x}")));
    }
    Ok(-complex_ei(Complex64::new(-x, 0.0))?.re)
}

/// Principal-value logarithmic integral ∫₀ˣ dt / log t for x > 1.
pub fn log_integral(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::BranchAtOne(x));
    }
    Ok(complex_ei(Complex64::new(x.ln(), 0.0))?.re)
}
