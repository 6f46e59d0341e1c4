//! Truncated spectral operators and invertibility evidence.
//!
//! The spectrum of a^{(T₀,T)} is the curve {ζ(c+iτ): T₀ ≤ |τ| ≤ T}, so every
//! verdict here is a statement about samples of ζ on a vertical segment.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::zeta::{xi, zeta, zeta_and_derivative, EvalAccuracy, ZetaZero};

/// Radius of the hole cut around τ = 0 when the segment passes through s = 1.
pub const PUNCTURE: f64 = 1e-3;
/// Multiple of (resolution × local slope) that a modulus must exceed to count
/// as bounded away from zero.
pub const SAFETY_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub c: f64,
    pub t: f64,
    pub t0: f64,
}

impl TruncationSpec {
    pub fn new(c: f64, t: f64, t0: f64) -> Result<Self> {
        if !(c >= 0.0) || !(t > 0.0) || !(t0 >= 0.0) || t0 > t || !t.is_finite() {
            return Err(Error::InvalidParameter(format!("need c ≥ 0 and 0 ≤ T₀ ≤ T, T > 0; got c={c}, T₀={t0}, T={t}")));
        }
        Ok(Self { c, t, t0 })
    }

    pub fn plain(c: f64, t: f64) -> Result<Self> {
        Self::new(c, t, 0.0)
    }
}

/// Sampling of a τ-range: spacing at most `resolution`, with the interior
/// points moved by `offset`·spacing (offset ∈ [0, 1)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub resolution: f64,
    pub offset: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { resolution: 1e-2, offset: 0.0 }
    }
}

impl ScanConfig {
    pub fn new(resolution: f64, offset: f64) -> Result<Self> {
        if !(resolution > 0.0) || !(0.0..1.0).contains(&offset) {
            return Err(Error::InvalidParameter("need resolution > 0 and offset in [0, 1)".into()));
        }
        Ok(Self { resolution, offset })
    }

    /// Ascending sample points of [a, b], endpoints included.
    fn points(&self, a: f64, b: f64) -> Vec<f64> {
        let n = ((b - a) / self.resolution).ceil().max(1.0) as usize;
        let step = (b - a) / n as f64;
        let mut pts = Vec::with_capacity(n + 2);
        pts.push(a);
        for k in 0..n {
            let t = a + (k as f64 + self.offset) * step;
            if t > a && t < b {
                pts.push(t);
            }
        }
        pts.push(b);
        pts.dedup();
        pts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveSymbol {
    Zeta,
    Xi,
}

impl CurveSymbol {
    fn eval(&self, s: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
        match self {
            CurveSymbol::Zeta => zeta(s, acc),
            CurveSymbol::Xi => xi(s, acc),
        }
    }

    fn has_pole_at(&self, c: f64) -> bool {
        match self {
            CurveSymbol::Zeta => c == 1.0,
            CurveSymbol::Xi => c == 0.0 || c == 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCurve {
    pub spec: TruncationSpec,
    pub symbol: CurveSymbol,
    /// ascending, symmetric about 0
    pub tau_samples: Vec<f64>,
    pub values: Vec<Complex64>,
    pub min_modulus: f64,
    pub argmin_tau: f64,
    /// the segment passes through a pole, which is cut out and reported as ∞
    pub pole_at_infinity: bool,
}

impl SpectrumCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau,re,im,modulus\n");
        for (t, v) in self.tau_samples.iter().zip(&self.values) {
            let _ = writeln!(out, "{:.12},{:.15e},{:.15e},{:.15e}", t, v.re, v.im, v.norm());
        }
        out
    }
}

/// Minimizes `f` on [a, b] by golden-section search.
fn golden_min<F: Fn(f64) -> Result<f64>>(f: F, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..80 {
        if b - a < 1e-13 * b.abs().max(1.0) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Nonnegative τ samples with values and (for ζ) derivative moduli.
struct HalfCurve {
    taus: Vec<f64>,
    values: Vec<Complex64>,
    slopes: Vec<f64>,
}

fn sample_half(
    symbol: CurveSymbol,
    c: f64,
    lo: f64,
    hi: f64,
    cfg: &ScanConfig,
    acc: &EvalAccuracy,
    with_slope: bool,
) -> Result<HalfCurve> {
    let taus = cfg.points(lo, hi);
    let pairs: Vec<(Complex64, f64)> = taus
        .par_iter()
        .map(|&t| {
            let s = Complex64::new(c, t);
            if with_slope && symbol == CurveSymbol::Zeta {
                let (v, d) = zeta_and_derivative(s, acc)?;
                Ok((v, d.norm()))
            } else {
                Ok((symbol.eval(s, acc)?, 0.0))
            }
        })
        .collect::<Result<_>>()?;
    let (values, slopes) = pairs.into_iter().unzip();
    Ok(HalfCurve { taus, values, slopes })
}

/// Refines the smallest sampled modulus and inserts the refined point.
fn refine_minimum(
    half: &mut HalfCurve,
    symbol: CurveSymbol,
    c: f64,
    acc: &EvalAccuracy,
    with_slope: bool,
) -> Result<()> {
    let n = half.taus.len();
    let k = (0..n)
        .min_by(|&i, &j| half.values[i].norm().partial_cmp(&half.values[j].norm()).unwrap())
        .unwrap();
    let a = half.taus[k.saturating_sub(1)];
    let b = half.taus[(k + 1).min(n - 1)];
    if b <= a {
        return Ok(());
    }
    let (t, m) = golden_min(|t| Ok(symbol.eval(Complex64::new(c, t), acc)?.norm()), a, b)?;
    if m < half.values[k].norm() {
        let pos = half.taus.partition_point(|&x| x < t);
        if half.taus.get(pos) == Some(&t) {
            return Ok(());
        }
        let s = Complex64::new(c, t);
        let (v, d) = if with_slope && symbol == CurveSymbol::Zeta {
            let (v, d) = zeta_and_derivative(s, acc)?;
            (v, d.norm())
        } else {
            (symbol.eval(s, acc)?, 0.0)
        };
        half.taus.insert(pos, t);
        half.values.insert(pos, v);
        half.slopes.insert(pos, d);
    }
    Ok(())
}

fn mirror(spec: TruncationSpec, symbol: CurveSymbol, half: &HalfCurve, pole: bool) -> SpectrumCurve {
    let mut taus = Vec::with_capacity(2 * half.taus.len());
    let mut values = Vec::with_capacity(2 * half.taus.len());
    for (t, v) in half.taus.iter().zip(&half.values).rev() {
        if *t > 0.0 {
            taus.push(-t);
            values.push(v.conj());
        }
    }
    for (t, v) in half.taus.iter().zip(&half.values) {
        taus.push(*t);
        values.push(if *t == 0.0 { Complex64::new(v.re, 0.0) } else { *v });
    }
    let (mut min_modulus, mut argmin_tau) = (f64::INFINITY, 0.0);
    for (t, v) in half.taus.iter().zip(&half.values) {
        if v.norm() < min_modulus {
            min_modulus = v.norm();
            argmin_tau = *t;
        }
    }
    SpectrumCurve { spec, symbol, tau_samples: taus, values, min_modulus, argmin_tau, pole_at_infinity: pole }
}

fn curve_with_slopes(
    spec: TruncationSpec,
    symbol: CurveSymbol,
    cfg: &ScanConfig,
    acc: &EvalAccuracy,
    with_slope: bool,
    puncture: bool,
) -> Result<(SpectrumCurve, HalfCurve)> {
    let mut lo = spec.t0;
    let pole = symbol.has_pole_at(spec.c) && spec.t0 < PUNCTURE;
    if pole {
        if !puncture {
            return Err(Error::PoleInRange);
        }
        lo = PUNCTURE;
        if lo > spec.t {
            return Err(Error::PoleInRange);
        }
    }
    let mut half = sample_half(symbol, spec.c, lo, spec.t, cfg, acc, with_slope)?;
    refine_minimum(&mut half, symbol, spec.c, acc, with_slope)?;
    Ok((mirror(spec, symbol, &half, pole), half))
}

/// Samples ζ(c + iτ) for T₀ ≤ |τ| ≤ T.
pub fn truncated_spectrum_curve(spec: TruncationSpec, cfg: &ScanConfig, acc: &EvalAccuracy) -> Result<SpectrumCurve> {
    Ok(curve_with_slopes(spec, CurveSymbol::Zeta, cfg, acc, false, false)?.0)
}

/// As [`truncated_spectrum_curve`], but at c = 1 the pole is cut out with
/// radius [`PUNCTURE`] and flagged instead of rejected.
pub fn truncated_spectrum_curve_punctured(
    spec: TruncationSpec,
    cfg: &ScanConfig,
    acc: &EvalAccuracy,
) -> Result<SpectrumCurve> {
    Ok(curve_with_slopes(spec, CurveSymbol::Zeta, cfg, acc, false, true)?.0)
}

/// Samples ξ(c + iτ), the symbol of the global operator ξ(∂_c).
pub fn global_operator_curve(c: f64, t: f64, cfg: &ScanConfig, acc: &EvalAccuracy) -> Result<SpectrumCurve> {
    let spec = TruncationSpec::plain(c, t)?;
    Ok(curve_with_slopes(spec, CurveSymbol::Xi, cfg, acc, false, false)?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Invertible,
    NotInvertible,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvertibilityVerdict {
    pub spec: TruncationSpec,
    pub decision: Decision,
    pub min_modulus: f64,
    pub argmin_tau: f64,
    /// zero brackets that decided the case (NotInvertible) or were checked
    pub zero_brackets_used: Vec<ZetaZero>,
    pub scan_resolution: f64,
    /// SAFETY_FACTOR × resolution × local slope at the minimum
    pub threshold: f64,
    pub note: String,
}

impl InvertibilityVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "decision": self.decision,
            "min_modulus": self.min_modulus,
            "argmin_tau": self.argmin_tau,
            "witnesses": self.zero_brackets_used,
            "horizon": self.spec.t,
            "t0": self.spec.t0,
            "c": self.spec.c,
            "scan_resolution": self.scan_resolution,
            "threshold": self.threshold,
            "note": self.note,
        })
    }
}

/// Zeros of a certified table; `t_max` is the height up to which it is complete.
#[derive(Debug, Clone, Copy)]
pub struct ZeroTable<'a> {
    pub zeros: &'a [ZetaZero],
    pub t_max: f64,
}

/// Decides whether a^{(T₀,T)} is invertible, i.e. whether ζ avoids zero on
/// {c + iτ : T₀ ≤ |τ| ≤ T}.
pub fn truncated_invertibility(
    spec: TruncationSpec,
    cfg: &ScanConfig,
    table: ZeroTable<'_>,
    acc: &EvalAccuracy,
) -> Result<InvertibilityVerdict> {
    let step = cfg.resolution;
    if spec.c == 1.0 {
        let curve = truncated_spectrum_curve_punctured(spec, cfg, acc)?;
        return Ok(InvertibilityVerdict {
            spec,
            decision: Decision::Undetermined,
            min_modulus: curve.min_modulus,
            argmin_tau: curve.argmin_tau,
            zero_brackets_used: vec![],
            scan_resolution: step,
            threshold: f64::NAN,
            note: "segment passes through the pole at s = 1".into(),
        });
    }
    let (curve, half) = curve_with_slopes(spec, CurveSymbol::Zeta, cfg, acc, true, false)?;
    let n = half.taus.len();
    let local = |k: usize| {
        let lo = k.saturating_sub(1);
        let hi = (k + 1).min(n - 1);
        half.slopes[lo..=hi].iter().cloned().fold(0.0, f64::max)
    };
    let k_min = half.taus.iter().position(|&t| t == curve.argmin_tau).unwrap_or(0);
    let threshold = SAFETY_FACTOR * step * local(k_min);
    let mut verdict = InvertibilityVerdict {
        spec,
        decision: Decision::Undetermined,
        min_modulus: curve.min_modulus,
        argmin_tau: curve.argmin_tau,
        zero_brackets_used: vec![],
        scan_resolution: step,
        threshold,
        note: String::new(),
    };
    if spec.c == 0.5 {
        if table.t_max < spec.t {
            verdict.note = format!("zero table complete only up to {}", table.t_max);
            return Ok(verdict);
        }
        let inside: Vec<ZetaZero> = table
            .zeros
            .iter()
            .filter(|z| z.t - z.half_width >= spec.t0 && z.t + z.half_width <= spec.t)
            .cloned()
            .collect();
        let straddle = table.zeros.iter().any(|z| {
            let (a, b) = (z.t - z.half_width, z.t + z.half_width);
            (a < spec.t && b > spec.t) || (a < spec.t0 && b > spec.t0)
        });
        if !inside.is_empty() {
            verdict.decision = Decision::NotInvertible;
            verdict.note = format!("{} certified zero(s) on the segment", inside.len());
            verdict.zero_brackets_used = inside;
        } else if straddle {
            verdict.note = "a zero bracket straddles the segment end".into();
        } else {
            verdict.decision = Decision::Invertible;
            verdict.note = "no zero of the certified table on the segment".into();
        }
        return Ok(verdict);
    }
    let certified = (0..n).all(|k| half.values[k].norm() > SAFETY_FACTOR * step * local(k));
    if certified {
        verdict.decision = Decision::Invertible;
        verdict.note = "every sample exceeds its slope allowance".into();
    } else {
        verdict.note = "modulus within the slope allowance of zero; refine the resolution".into();
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum QuasiVerdict {
    NotQuasiInvertible { witness: ZetaZero },
    QuasiInvertibleUpTo(f64),
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiReport {
    pub c: f64,
    pub horizon: f64,
    pub verdict: QuasiVerdict,
    /// zero ordinates found in (0, horizon]; known only where it can be certified
    pub zero_count: Option<usize>,
    pub min_modulus: f64,
    pub argmin_tau: f64,
    /// ζ(2c)/ζ(c) ≤ |ζ(c+iτ)| for c > 1
    pub analytic_floor: Option<f64>,
}

/// Invertibility of every truncation a^{(T)} with T ≤ `t_max`.
pub fn quasi_invertibility_scan(
    c: f64,
    t_max: f64,
    cfg: &ScanConfig,
    table: ZeroTable<'_>,
    acc: &EvalAccuracy,
) -> Result<QuasiReport> {
    let v = truncated_invertibility(TruncationSpec::plain(c, t_max)?, cfg, table, acc)?;
    let analytic_floor = if c > 1.0 {
        Some(zeta(Complex64::new(2.0 * c, 0.0), acc)?.re / zeta(Complex64::new(c, 0.0), acc)?.re)
    } else {
        None
    };
    let (verdict, zero_count) = match v.decision {
        Decision::Invertible => (QuasiVerdict::QuasiInvertibleUpTo(t_max), Some(0)),
        Decision::NotInvertible => {
            let count = v.zero_brackets_used.len();
            (QuasiVerdict::NotQuasiInvertible { witness: v.zero_brackets_used[0] }, Some(count))
        }
        Decision::Undetermined => (QuasiVerdict::Undetermined, None),
    };
    Ok(QuasiReport { c, horizon: t_max, verdict, zero_count, min_modulus: v.min_modulus, argmin_tau: v.argmin_tau, analytic_floor })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryCheck {
    pub c: f64,
    pub mirror: f64,
    /// ordinates of local minima of |ξ(c+iτ)|, τ ∈ [0, T]
    pub minima: Vec<f64>,
    pub mirror_minima: Vec<f64>,
    pub max_mismatch: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhDiagnostic {
    pub rows: Vec<QuasiReport>,
    pub critical: QuasiReport,
    pub symmetry: Vec<SymmetryCheck>,
    /// some c ≠ 1/2 came out NotQuasiInvertible
    pub violation: bool,
}

fn local_minima(curve: &SpectrumCurve) -> Vec<f64> {
    let pos: Vec<(f64, f64)> = curve
        .tau_samples
        .iter()
        .zip(&curve.values)
        .filter(|(t, _)| **t >= 0.0)
        .map(|(t, v)| (*t, v.norm()))
        .collect();
    (1..pos.len().saturating_sub(1))
        .filter(|&k| pos[k].1 < pos[k - 1].1 && pos[k].1 <= pos[k + 1].1)
        .map(|k| pos[k].0)
        .collect()
}

/// Quasi-invertibility for each c of the grid, the c = 1/2 row, and the
/// c ↔ 1−c symmetry of the ξ-modulus profile.
pub fn rh_diagnostic(
    c_grid: &[f64],
    t_max: f64,
    cfg: &ScanConfig,
    table: ZeroTable<'_>,
    acc: &EvalAccuracy,
) -> Result<RhDiagnostic> {
    for &c in c_grid {
        if !(c > 0.0 && c < 1.0) || c == 0.5 {
            return Err(Error::InvalidParameter(format!("grid points must lie in (0,1) without 1/2, got {c}")));
        }
    }
    let rows = c_grid
        .iter()
        .map(|&c| quasi_invertibility_scan(c, t_max, cfg, table, acc))
        .collect::<Result<Vec<_>>>()?;
    let critical = quasi_invertibility_scan(0.5, t_max, cfg, table, acc)?;
    let mut symmetry = Vec::new();
    for &c in c_grid.iter().filter(|&&c| c < 0.5) {
        let m = 1.0 - c;
        if !c_grid.iter().any(|&x| (x - m).abs() < 1e-12) {
            continue;
        }
        let a = local_minima(&global_operator_curve(c, t_max, cfg, acc)?);
        let b = local_minima(&global_operator_curve(m, t_max, cfg, acc)?);
        let max_mismatch = if a.len() == b.len() {
            a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        symmetry.push(SymmetryCheck {
            c,
            mirror: m,
            holds: max_mismatch <= cfg.resolution,
            minima: a,
            mirror_minima: b,
            max_mismatch,
        });
    }
    let violation = rows.iter().any(|r| matches!(r.verdict, QuasiVerdict::NotQuasiInvertible { .. }));
    Ok(RhDiagnostic { rows, critical, symmetry, violation })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub target: Complex64,
    pub min_distance: f64,
    pub argmin_tau: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullLineProbe {
    pub c: f64,
    pub t_max: f64,
    pub rows: Vec<ProbeRow>,
    /// (ζ(2c)/ζ(c), ζ(c)) for c > 1
    pub annulus: Option<(f64, f64)>,
}

/// Smallest sampled distance from each target to ζ(c + iτ), |τ| ≤ T.
/// Small distances witness proximity; nothing here certifies absence.
pub fn full_line_spectrum_probe(
    c: f64,
    t_max: f64,
    targets: &[Complex64],
    cfg: &ScanConfig,
    acc: &EvalAccuracy,
) -> Result<FullLineProbe> {
    if c == 1.0 {
        return Err(Error::InvalidParameter("the line Re s = 1 passes through the pole".into()));
    }
    let half = sample_half(CurveSymbol::Zeta, c, 0.0, t_max, cfg, acc, false)?;
    let rows = targets
        .iter()
        .map(|&z| {
            let mut best = (f64::INFINITY, 0.0);
            for (t, v) in half.taus.iter().zip(&half.values) {
                for (tt, vv) in [(*t, *v), (-*t, v.conj())] {
                    let d = (vv - z).norm();
                    if d < best.0 {
                        best = (d, tt);
                    }
                }
            }
            let step = cfg.resolution;
            let (a, b) = ((best.1 - step).max(-t_max), (best.1 + step).min(t_max));
            let (t, d) = golden_min(|t| Ok((zeta(Complex64::new(c, t), acc)? - z).norm()), a, b)?;
            Ok(if d < best.0 {
                ProbeRow { target: z, min_distance: d, argmin_tau: t }
            } else {
                ProbeRow { target: z, min_distance: best.0, argmin_tau: best.1 }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let annulus = if c > 1.0 {
        let zc = zeta(Complex64::new(c, 0.0), acc)?.re;
        Some((zeta(Complex64::new(2.0 * c, 0.0), acc)?.re / zc, zc))
    } else {
        None
    };
    Ok(FullLineProbe { c, t_max, rows, annulus })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundednessRow {
    pub c: f64,
    pub t_max: f64,
    pub sup_modulus: f64,
    pub argsup_tau: f64,
    /// ζ(c) for c > 1
    pub analytic_bound: Option<f64>,
}

/// sup |ζ(c+iτ)| over |τ| ≤ T for each T of `t_maxes`, from one scan per c.
pub fn boundedness_table(
    cs: &[f64],
    t_maxes: &[f64],
    cfg: &ScanConfig,
    acc: &EvalAccuracy,
) -> Result<Vec<BoundednessRow>> {
    let top = t_maxes.iter().cloned().fold(0.0, f64::max);
    if !(top > 0.0) {
        return Err(Error::InvalidParameter("need a positive T".into()));
    }
    let mut rows = Vec::new();
    for &c in cs {
        let lo = if c == 1.0 { PUNCTURE } else { 0.0 };
        let half = sample_half(CurveSymbol::Zeta, c, lo, top, cfg, acc, false)?;
        let bound = if c > 1.0 { Some(zeta(Complex64::new(c, 0.0), acc)?.re) } else { None };
        for &t in t_maxes {
            let (mut sup, mut at) = (0.0, 0.0);
            for (tau, v) in half.taus.iter().zip(&half.values) {
                if *tau <= t && v.norm() > sup {
                    sup = v.norm();
                    at = *tau;
                }
            }
            rows.push(BoundednessRow { c, t_max: t, sup_modulus: sup, argsup_tau: at, analytic_bound: bound });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::find_critical_zeros;

    fn acc() -> EvalAccuracy {
        EvalAccuracy::default()
    }

    fn zeros(t: f64) -> Vec<ZetaZero> {
        find_critical_zeros(t, &acc()).unwrap()
    }

    #[test]
    fn curve_is_conjugate_symmetric() {
        let c = truncated_spectrum_curve(TruncationSpec::plain(0.7, 5.0).unwrap(), &ScanConfig::default(), &acc()).unwrap();
        let n = c.tau_samples.len();
        for k in 0..n {
            assert_eq!(c.tau_samples[k], -c.tau_samples[n - 1 - k]);
            assert_eq!(c.values[k], c.values[n - 1 - k].conj());
        }
        let min = c.values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        assert_eq!(min, c.min_modulus);
    }

    #[test]
    fn euler_floor_at_two() {
        let floor = (std::f64::consts::PI.powi(4) / 90.0) / (std::f64::consts::PI.powi(2) / 6.0);
        let c = truncated_spectrum_curve(TruncationSpec::plain(2.0, 10.0).unwrap(), &ScanConfig::default(), &acc()).unwrap();
        assert!(c.min_modulus >= floor);
    }

    #[test]
    fn first_zero_on_the_critical_segment() {
        let c = truncated_spectrum_curve(TruncationSpec::plain(0.5, 15.0).unwrap(), &ScanConfig::default(), &acc()).unwrap();
        assert!(c.min_modulus < 1e-4);
        assert!((c.argmin_tau - 14.134725).abs() < 1e-3);
        let g = truncated_spectrum_curve(TruncationSpec::new(0.5, 20.0, 15.0).unwrap(), &ScanConfig::default(), &acc())
            .unwrap();
        assert!(g.min_modulus > 0.1);
    }

    #[test]
    fn pole_handling_at_one() {
        let spec = TruncationSpec::plain(1.0, 5.0).unwrap();
        assert!(matches!(
            truncated_spectrum_curve(spec, &ScanConfig::default(), &acc()),
            Err(Error::PoleInRange)
        ));
        let p = truncated_spectrum_curve_punctured(spec, &ScanConfig::default(), &acc()).unwrap();
        assert!(p.pole_at_infinity);
        assert!(p.tau_samples.iter().all(|t| t.abs() >= PUNCTURE));
        let zs = zeros(20.0);
        let v = truncated_invertibility(spec, &ScanConfig::default(), ZeroTable { zeros: &zs, t_max: 20.0 }, &acc())
            .unwrap();
        assert_eq!(v.decision, Decision::Undetermined);
    }

    #[test]
    fn critical_line_verdicts() {
        let zs = zeros(30.0);
        let table = ZeroTable { zeros: &zs, t_max: 30.0 };
        let cfg = ScanConfig::default();
        let v14 = truncated_invertibility(TruncationSpec::plain(0.5, 14.0).unwrap(), &cfg, table, &acc()).unwrap();
        assert_eq!(v14.decision, Decision::Invertible);
        let v15 = truncated_invertibility(TruncationSpec::plain(0.5, 15.0).unwrap(), &cfg, table, &acc()).unwrap();
        assert_eq!(v15.decision, Decision::NotInvertible);
        assert_eq!(v15.zero_brackets_used.len(), 1);
        let v = truncated_invertibility(TruncationSpec::new(0.5, 20.0, 15.0).unwrap(), &cfg, table, &acc()).unwrap();
        assert_eq!(v.decision, Decision::Invertible);
        let json = v15.to_json();
        assert_eq!(json["decision"], "NotInvertible");
        assert_eq!(json["horizon"], 15.0);
    }

    #[test]
    fn critical_line_is_not_quasi_invertible() {
        let zs = zeros(60.0);
        let r = quasi_invertibility_scan(0.5, 50.0, &ScanConfig::default(), ZeroTable { zeros: &zs, t_max: 60.0 }, &acc())
            .unwrap();
        assert_eq!(r.zero_count, Some(10));
        match r.verdict {
            QuasiVerdict::NotQuasiInvertible { witness } => assert!((witness.t - 14.134725).abs() < 1e-6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn off_line_quasi_invertible() {
        let table = ZeroTable { zeros: &[], t_max: 0.0 };
        let cfg = ScanConfig::new(1e-3, 0.0).unwrap();
        let r = quasi_invertibility_scan(0.75, 50.0, &cfg, table, &acc()).unwrap();
        assert_eq!(r.verdict, QuasiVerdict::QuasiInvertibleUpTo(50.0));
    }

    #[test]
    fn xi_curve_symmetries() {
        let cfg = ScanConfig::default();
        let half = global_operator_curve(0.5, 15.0, &cfg, &acc()).unwrap();
        let scale = half.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(half.values.iter().all(|v| v.im.abs() <= 1e-12 * scale));
        let k = half.tau_samples.iter().position(|&t| t > 14.0).unwrap();
        let j = half.tau_samples.iter().position(|&t| t > 14.3).unwrap();
        assert!(half.values[k].re * half.values[j].re < 0.0);
        let a = global_operator_curve(0.3, 10.0, &cfg, &acc()).unwrap();
        let b = global_operator_curve(0.7, 10.0, &cfg, &acc()).unwrap();
        let n = a.values.len();
        for i in 0..n {
            assert_eq!(a.tau_samples[i], -b.tau_samples[n - 1 - i]);
            assert!((a.values[i] - b.values[n - 1 - i]).norm() < 1e-9);
        }
        assert!(matches!(global_operator_curve(1.0, 5.0, &cfg, &acc()), Err(Error::PoleInRange)));
    }

    #[test]
    fn probe_annulus_and_on_curve_point() {
        let cfg = ScanConfig::default();
        let p = full_line_spectrum_probe(2.0, 20.0, &[Complex64::new(0.0, 0.0)], &cfg, &acc()).unwrap();
        let (lo, hi) = p.annulus.unwrap();
        assert!(p.rows[0].min_distance >= lo && lo < hi);
        let z07 = zeta(Complex64::new(0.7, 0.0), &acc()).unwrap();
        let q = full_line_spectrum_probe(0.7, 10.0, &[z07], &cfg, &acc()).unwrap();
        assert!(q.rows[0].min_distance < 1e-12);
        assert_eq!(q.rows[0].argmin_tau, 0.0);
    }

    #[test]
    fn boundedness_growth() {
        let rows = boundedness_table(&[2.0, 0.3], &[10.0, 100.0], &ScanConfig::default(), &acc()).unwrap();
        assert!(rows[0].sup_modulus <= rows[0].analytic_bound.unwrap() + 1e-12);
        assert!(rows[3].sup_modulus > rows[2].sup_modulus);
    }
}
