//! g(∂_c) through the unitary picture: ∂_c = c + iV_c, and V_c becomes
//! multiplication by the frequency after W and a Fourier transform.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::grid::{from_unweighted, to_unweighted, GridFunction};
use crate::error::{Error, Result};
use crate::zeta::{xi, zeta, EvalAccuracy};

/// Fourier coefficients below this fraction of the largest one are dropped
/// instead of multiplied by an expensive symbol.
const SPECTRAL_FLOOR: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Symbol {
    One,
    /// n^{-s}
    Power(f64),
    /// e^{-s t₀}
    Exp(f64),
    Zeta,
    Xi,
}

impl Symbol {
    fn is_costly(&self) -> bool {
        matches!(self, Symbol::Zeta | Symbol::Xi)
    }

    fn check_segment(&self, c: f64) -> Result<()> {
        let pole = match self {
            Symbol::Zeta => c == 1.0,
            Symbol::Xi => c == 0.0 || c == 1.0,
            Symbol::Power(n) => {
                if !(*n > 0.0) {
                    return Err(Error::InvalidParameter(format!("n^(-s) needs n > 0, got {n}")));
                }
                false
            }
            _ => false,
        };
        if pole {
            Err(Error::PoleOnSegment { c })
        } else {
            Ok(())
        }
    }

    pub fn eval(&self, s: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
        Ok(match self {
            Symbol::One => Complex64::new(1.0, 0.0),
            Symbol::Power(n) => (-s * n.ln()).exp(),
            Symbol::Exp(t0) => (-s * *t0).exp(),
            Symbol::Zeta => zeta(s, acc)?,
            Symbol::Xi => xi(s, acc)?,
        })
    }
}

/// g(∂_c) f: multiply the Fourier transform of Wf by g(c + iξ), then undo W.
pub fn apply_functional_calculus(symbol: Symbol, f: &GridFunction, acc: &EvalAccuracy) -> Result<GridFunction> {
    symbol.check_segment(f.c)?;
    f.require_inside_guard()?;
    let n = f.samples.len();
    let m = (2 * n).next_power_of_two();
    let u = to_unweighted(f);
    let mut buf = u.samples.clone();
    buf.resize(m, Complex64::new(0.0, 0.0));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(m).process(&mut buf);
    let scale = 2.0 * std::f64::consts::PI / (m as f64 * f.grid.h);
    let peak = buf.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let cut = if symbol.is_costly() { SPECTRAL_FLOOR * peak } else { 0.0 };
    let c = f.c;
    buf = buf
        .into_par_iter()
        .enumerate()
        .map(|(k, z)| {
            if z.norm() <= cut {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let kk = if k <= m / 2 { k as f64 } else { k as f64 - m as f64 };
            let s = Complex64::new(c, kk * scale);
            Ok(z * symbol.eval(s, acc)?)
        })
        .collect::<Result<Vec<_>>>()?;
    planner.plan_fft_inverse(m).process(&mut buf);
    buf.truncate(n);
    let inv = 1.0 / m as f64;
    let out = u.with_samples(buf.into_iter().map(|z| z * inv).collect());
    from_unweighted(&out, c)
}
