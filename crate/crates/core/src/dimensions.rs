//! Geometric zeta functions, complex dimensions, and the explicit formulas
//! built from them.
//!
//! Only lattice strings have a meromorphic continuation here; for them
//! ζ_L(s) = b^{-s}/(1 - m b^{-s}) and every pole is simple, sitting on the
//! line Re s = log m / log b with spacing 2π/log b.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::strings::{FractalString, Representation};
use crate::zeta::{zeta, EvalAccuracy};

/// The region {Re s ≥ sigma_min, |Im s| ≤ t_max}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub sigma_min: f64,
    pub t_max: f64,
}

impl Window {
    pub fn new(sigma_min: f64, t_max: f64) -> Result<Self> {
        if !(t_max > 0.0) || !sigma_min.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "window needs finite sigma_min and t_max > 0, got ({sigma_min}, {t_max})"
            )));
        }
        Ok(Self { sigma_min, t_max })
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re >= self.sigma_min && s.im.abs() <= self.t_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDimension {
    pub omega: Complex64,
    pub residue: Complex64,
    pub order: u32,
}

/// A series value with a bound on the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

fn lattice_params(string: &FractalString) -> Result<(f64, f64)> {
    match string.representation {
        Representation::Lattice { base, ratio, .. } => Ok((base, ratio)),
        Representation::Explicit { .. } => Err(Error::Unsupported(
            "meromorphic continuation is only available for lattice strings".into(),
        )),
    }
}

/// ζ_L(s) = Σ w_j l_j^s. Lattice strings use the closed form; explicit
/// strings sum their lengths and bound any tail by T·l_J^{Re s - 1}, which
/// needs Re s ≥ 1.
pub fn geometric_zeta(string: &FractalString, s: Complex64) -> Result<SeriesValue> {
    match &string.representation {
        Representation::Lattice { base, ratio, .. } => {
            let bs = (-s * base.ln()).exp();
            let den = 1.0 - bs * *ratio;
            if den.norm() < 1e-12 {
                return Err(Error::PoleHit);
            }
            Ok(SeriesValue { value: bs / den, tail_bound: 0.0 })
        }
        Representation::Explicit { lengths, tail } => {
            let tail = tail.unwrap_or(0.0);
            let last = lengths.last().unwrap().0;
            let tail_bound = if tail > 0.0 {
                if s.re < 1.0 {
                    return Err(Error::AbscissaViolation { re_s: s.re, abscissa: 1.0 });
                }
                tail * last.powf(s.re - 1.0)
            } else {
                0.0
            };
            let value = lengths
                .iter()
                .rev()
                .map(|&(l, w)| (s * l.ln()).exp() * w as f64)
                .sum();
            Ok(SeriesValue { value, tail_bound })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbscissaEstimate {
    pub value: f64,
    pub uncertainty: f64,
}

/// Abscissa of convergence of ζ_L: exact for lattice strings, a log-log
/// growth fit of the counting function otherwise.
pub fn abscissa_of_convergence(string: &FractalString) -> AbscissaEstimate {
    match &string.representation {
        Representation::Lattice { base, ratio, .. } => {
            AbscissaEstimate { value: ratio.ln() / base.ln(), uncertainty: 0.0 }
        }
        Representation::Explicit { lengths, .. } => {
            if lengths.len() < 8 {
                return AbscissaEstimate { value: 0.0, uncertainty: 0.0 };
            }
            // cumulative counts at the jump points, upper half of the log range
            let mut cum = 0.0;
            let pts: Vec<(f64, f64)> = lengths
                .iter()
                .map(|&(l, w)| {
                    cum += w as f64;
                    ((1.0 / l).ln(), cum.ln())
                })
                .collect();
            let x_lo = pts[0].0;
            let x_hi = pts.last().unwrap().0;
            let cut = 0.5 * (x_lo + x_hi);
            let sel: Vec<(f64, f64)> = pts.into_iter().filter(|p| p.0 >= cut).collect();
            if sel.len() < 3 {
                return AbscissaEstimate { value: 0.0, uncertainty: f64::INFINITY };
            }
            let (slope, stderr) = linear_fit(&sel);
            AbscissaEstimate { value: slope, uncertainty: stderr.max(1.0 / sel.len() as f64) }
        }
    }
}

/// Least-squares slope and its standard error.
fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let ss: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
    (slope, (ss / (n - 2.0).max(1.0) / sxx).sqrt())
}

/// Poles of ζ_L in the window: ω_n = D + i·n·2π/log b, residue 1/(m log b).
pub fn complex_dimensions_in(string: &FractalString, window: &Window) -> Result<Vec<ComplexDimension>> {
    let (b, m) = lattice_params(string)?;
    let d = m.ln() / b.ln();
    if d < window.sigma_min {
        return Ok(Vec::new());
    }
    let p = 2.0 * PI / b.ln();
    let n_max = (window.t_max / p).floor() as i64;
    let residue = Complex64::new(1.0 / (m * b.ln()), 0.0);
    Ok((-n_max..=n_max)
        .map(|n| ComplexDimension { omega: Complex64::new(d, n as f64 * p), residue, order: 1 })
        .collect())
}

/// (1/2πi)∮ f over a circle of radius r around z, trapezoid rule with k nodes.
pub fn contour_residue<F: Fn(Complex64) -> Result<Complex64>>(
    f: F,
    z: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..nodes {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64);
        acc += f(z + e * radius)? * e;
    }
    Ok(acc * radius / nodes as f64)
}

/// Residue of ζ_L at ω by contour integration, for auditing the analytic value.
pub fn numerical_residue(string: &FractalString, omega: Complex64) -> Result<Complex64> {
    let (b, _) = lattice_params(string)?;
    let radius = 0.25 * (2.0 * PI / b.ln()).min(1.0);
    contour_residue(|s| geometric_zeta(string, s).map(|v| v.value), omega, radius, 64)
}

fn check_explicit_formula_input(string: &FractalString, dims: &[ComplexDimension]) -> Result<()> {
    lattice_params(string)?;
    if dims.iter().any(|d| (d.omega - 1.0).norm() < 1e-12) {
        return Err(Error::PoleAtOneInWindow);
    }
    if dims.iter().any(|d| d.omega.norm() < 1e-12) {
        return Err(Error::Unsupported("a complex dimension at 0 makes the s = 0 term a double pole".into()));
    }
    Ok(())
}

/// Sum over ±n pairs: term(ω₀) + 2 Σ_{Im ω > 0} Re term(ω), real by construction.
fn paired_sum<F: Fn(&ComplexDimension) -> Result<Complex64> + Sync>(
    dims: &[ComplexDimension],
    term: F,
) -> Result<f64> {
    let parts: Vec<f64> = dims
        .par_iter()
        .filter(|d| d.omega.im >= 0.0)
        .map(|d| {
            let v = term(d)?;
            Ok(if d.omega.im == 0.0 { v.re } else { 2.0 * v.re })
        })
        .collect::<Result<_>>()?;
    Ok(parts.iter().sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TubeRegime {
    /// contour closed to the left: residues at the complex dimensions (and 0)
    DimensionSum,
    /// 2ε ≥ 1: only the pole at s = 1 contributes, V = ζ_L(1)
    Saturated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeFormulaValue {
    pub volume: f64,
    pub terms: usize,
    pub regime: TubeRegime,
}

/// V(ε) = Σ_ω res(ζ_L; ω)(2ε)^{1-ω}/(ω(1-ω)) + 2ε ζ_L(0), the last term
/// included when 0 lies in the window.
pub fn tube_formula_via_dimensions(
    string: &FractalString,
    epsilon: f64,
    window: &Window,
) -> Result<TubeFormulaValue> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("ε must be positive, got {epsilon}")));
    }
    let dims = complex_dimensions_in(string, window)?;
    check_explicit_formula_input(string, &dims)?;
    let two = 2.0 * epsilon;
    if two >= 1.0 {
        let v = geometric_zeta(string, Complex64::new(1.0, 0.0))?.value.re;
        return Ok(TubeFormulaValue { volume: v, terms: 1, regime: TubeRegime::Saturated });
    }
    let ln2e = two.ln();
    let mut v = paired_sum(&dims, |d| {
        let w = d.omega;
        Ok(d.residue * ((1.0 - w) * ln2e).exp() / (w * (1.0 - w)))
    })?;
    if window.sigma_min <= 0.0 {
        v += two * geometric_zeta(string, Complex64::new(0.0, 0.0))?.value.re;
    }
    Ok(TubeFormulaValue { volume: v, terms: dims.len(), regime: TubeRegime::DimensionSum })
}

/// Level 1: N(x) ≈ Σ res·x^ω/ω + ζ_L(0). Level 0: the density Σ res·x^{ω-1}.
pub fn explicit_counting(string: &FractalString, x: f64, window: &Window, level: u8) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("x must be positive, got {x}")));
    }
    let dims = complex_dimensions_in(string, window)?;
    check_explicit_formula_input(string, &dims)?;
    let lx = x.ln();
    match level {
        1 => {
            let sum = paired_sum(&dims, |d| Ok(d.residue * (d.omega * lx).exp() / d.omega))?;
            Ok(sum + geometric_zeta(string, Complex64::new(0.0, 0.0))?.value.re)
        }
        0 => paired_sum(&dims, |d| Ok(d.residue * ((d.omega - 1.0) * lx).exp())),
        _ => Err(Error::Unsupported(format!("explicit formula level {level}; only 0 and 1 are implemented"))),
    }
}

fn spectral_terms(
    string: &FractalString,
    window: &Window,
    acc: &EvalAccuracy,
) -> Result<(f64, Vec<(ComplexDimension, Complex64)>)> {
    let dims = complex_dimensions_in(string, window)?;
    check_explicit_formula_input(string, &dims)?;
    let z1 = geometric_zeta(string, Complex64::new(1.0, 0.0))?.value.re;
    let with_zeta = dims
        .par_iter()
        .filter(|d| d.omega.im >= 0.0)
        .map(|d| Ok((*d, zeta(d.omega, acc)?)))
        .collect::<Result<_>>()?;
    Ok((z1, with_zeta))
}

/// Density of spectral states ζ_L(1) + Σ res·ζ(ω)·x^{ω-1}.
pub fn density_spectral_states(string: &FractalString, x: f64, window: &Window, acc: &EvalAccuracy) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("x must be positive, got {x}")));
    }
    let (z1, terms) = spectral_terms(string, window, acc)?;
    let lx = x.ln();
    let osc: f64 = terms
        .iter()
        .map(|(d, z)| {
            let v = d.residue * z * ((d.omega - 1.0) * lx).exp();
            if d.omega.im == 0.0 { v.re } else { 2.0 * v.re }
        })
        .sum();
    Ok(z1 + osc)
}

/// ∫_a^b of the spectral density, in closed form term by term.
pub fn integrated_spectral_density(
    string: &FractalString,
    a: f64,
    b: f64,
    window: &Window,
    acc: &EvalAccuracy,
) -> Result<f64> {
    if !(a > 0.0 && b >= a) {
        return Err(Error::InvalidParameter(format!("need 0 < a ≤ b, got [{a}, {b}]")));
    }
    let (z1, terms) = spectral_terms(string, window, acc)?;
    let (la, lb) = (a.ln(), b.ln());
    let osc: f64 = terms
        .iter()
        .map(|(d, z)| {
            let w = d.omega;
            let v = d.residue * z * ((w * lb).exp() - (w * la).exp()) / w;
            if w.im == 0.0 { v.re } else { 2.0 * v.re }
        })
        .sum();
    Ok(z1 * (b - a) + osc)
}

pub fn dimensions_to_csv(dims: &[ComplexDimension]) -> String {
    let mut out = String::from("re_omega,im_omega,re_residue,im_residue\n");
    for d in dims {
        let _ = writeln!(
            out,
            "{:.15e},{:.15e},{:.15e},{:.15e}",
            d.omega.re, d.omega.im, d.residue.re, d.residue.im
        );
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionRow {
    pub x: f64,
    pub exact: f64,
    pub reconstructed: f64,
    pub terms: usize,
}

pub fn reconstruction_to_csv(rows: &[ReconstructionRow]) -> String {
    let mut out = String::from("x,exact,reconstructed,terms\n");
    for r in rows {
        let _ = writeln!(out, "{:.12e},{:.12e},{:.12e},{}", r.x, r.exact, r.reconstructed, r.terms);
    }
    out
}
