//! Zeros of ζ on the critical line and their on-disk cache.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::Path;

use super::riemann::hardy_z;
use super::EvalAccuracy;
use crate::error::{Error, Result};

pub const SCAN_STEP: f64 = 0.01;
const MAX_T: f64 = 1e4;

/// A bracket [t - half_width, t + half_width] containing one sign change of
/// the critical-line function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaZero {
    pub t: f64,
    pub half_width: f64,
}

impl ZetaZero {
    pub fn rho(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(0.5, self.t)
    }
}

fn sample(ts: &[f64], acc: &EvalAccuracy) -> Result<Vec<f64>> {
    ts.par_iter().map(|&t| hardy_z(t, acc)).collect()
}

fn bisect(mut lo: f64, mut hi: f64, mut f_lo: f64, acc: &EvalAccuracy) -> Result<ZetaZero> {
    let floor = 4.0 * f64::EPSILON * hi.abs();
    let tol = acc.abs_tol.max(floor);
    while 0.5 * (hi - lo) > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = hardy_z(mid, acc)?;
        if f_mid == 0.0 {
            return Ok(ZetaZero { t: mid, half_width: tol });
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(ZetaZero {
        t: 0.5 * (lo + hi),
        half_width: (0.5 * (hi - lo)).max(f64::MIN_POSITIVE),
    })
}

/// True when three same-signed samples dip towards zero in a way that a
/// parabola through them crosses zero: a likely pair of close zeros.
fn suspicious(f0: f64, f1: f64, f2: f64) -> bool {
    let sgn = f1.signum();
    if f0.signum() != sgn || f2.signum() != sgn {
        return false;
    }
    let (a, b, c) = (sgn * f0, sgn * f1, sgn * f2);
    if !(b < a && b < c) {
        return false;
    }
    // parabola through (-1,a), (0,b), (1,c); minimum b - (c-a)²/(8·curv)
    let curv = 0.5 * (a - 2.0 * b + c);
    let slope = 0.5 * (c - a);
    b - slope * slope / (4.0 * curv) < 0.0
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil() as usize;
    (0..=n).map(|k| (lo + k as f64 * step).min(hi)).collect()
}

fn sign_changes(fs: &[f64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..fs.len() - 1 {
        if fs[i] == 0.0 {
            continue;
        }
        if fs[i + 1] == 0.0 || (fs[i] > 0.0) != (fs[i + 1] > 0.0) {
            out.push((i, i + 1));
        }
    }
    out
}

/// Zeros of ζ(1/2 + it) for 0 < t ≤ t_max, located by sign changes on a
/// 0.01 grid and refined by bisection to `acc.abs_tol`.
pub fn find_critical_zeros(t_max: f64, acc: &EvalAccuracy) -> Result<Vec<ZetaZero>> {
    find_critical_zeros_with_step(t_max, SCAN_STEP, acc)
}

pub fn find_critical_zeros_with_step(
    t_max: f64,
    step: f64,
    acc: &EvalAccuracy,
) -> Result<Vec<ZetaZero>> {
    if !(t_max > 0.0) || t_max > MAX_T {
        return Err(Error::InvalidParameter(format!(
            "t_max must lie in (0, {MAX_T}], got {t_max}"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::InvalidParameter("scan step must be positive".into()));
    }
    let ts = grid(0.0, t_max, step);
    let fs = sample(&ts, acc)?;
    let mut cells: Vec<(f64, f64, f64)> = sign_changes(&fs)
        .into_iter()
        .map(|(i, j)| (ts[i], ts[j], fs[i]))
        .collect();

    for i in 1..fs.len() - 1 {
        if !suspicious(fs[i - 1], fs[i], fs[i + 1]) {
            continue;
        }
        let fine_ts = grid(ts[i - 1], ts[i + 1], step / 10.0);
        let fine_fs = sample(&fine_ts, acc)?;
        let found = sign_changes(&fine_fs);
        if found.is_empty() {
            let still = (1..fine_fs.len() - 1)
                .any(|k| suspicious(fine_fs[k - 1], fine_fs[k], fine_fs[k + 1]));
            if still {
                return Err(Error::ScanStepTooCoarse { t: ts[i], step: step / 10.0 });
            }
            continue;
        }
        for (a, b) in found {
            cells.push((fine_ts[a], fine_ts[b], fine_fs[a]));
        }
    }
    cells.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    cells.dedup_by(|a, b| a.0 < b.1 && b.0 < a.1);

    let mut zeros: Vec<ZetaZero> = cells
        .par_iter()
        .map(|&(lo, hi, f_lo)| {
            if f_lo == 0.0 {
                Ok(ZetaZero { t: lo, half_width: acc.abs_tol })
            } else {
                bisect(lo, hi, f_lo, acc)
            }
        })
        .collect::<Result<_>>()?;
    zeros.retain(|z| z.t > 0.0 && z.t <= t_max);
    Ok(zeros)
}

/// Riemann–von Mangoldt estimate of the number of zeros with 0 < t ≤ T.
pub fn zero_count_estimate(t: f64) -> f64 {
    let x = t / (2.0 * std::f64::consts::PI);
    x * x.ln() - x + 0.875
}

/// The first `n` critical zeros, growing t_max until enough are found.
pub fn first_zeros(n: usize, acc: &EvalAccuracy) -> Result<Vec<ZetaZero>> {
    let mut t_max = 20.0;
    while zero_count_estimate(t_max) < n as f64 + 2.0 {
        t_max *= 1.25;
    }
    loop {
        let mut zs = find_critical_zeros(t_max.min(MAX_T), acc)?;
        if zs.len() >= n {
            zs.truncate(n);
            return Ok(zs);
        }
        if t_max >= MAX_T {
            return Err(Error::ZeroTableTooSmall { requested: n, available: zs.len() });
        }
        t_max *= 1.1;
    }
}

fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let prec = (11 - mag).max(0) as usize;
    format!("{:.*}", prec, x)
}

/// Serialized table: header line followed by `t<TAB>half_width` rows.
pub fn format_zero_cache(t_max: f64, tol: f64, zeros: &[ZetaZero]) -> String {
    let mut out = format!("# zetalab-zeros v1 t_max={} tol={:e}\n", fmt12(t_max), tol);
    for z in zeros {
        out.push_str(&fmt12(z.t));
        out.push('\t');
        out.push_str(&fmt12(z.half_width));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCache {
    pub t_max: f64,
    pub tol: f64,
    pub zeros: Vec<ZetaZero>,
}

/// Parse a cache file. Stored ordinates carry only 12 significant digits,
/// so each half-width is widened by the printing rounding.
pub fn parse_zero_cache(text: &str) -> Result<ZeroCache> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty zero cache".into()))?;
    let rest = header
        .strip_prefix("# zetalab-zeros v1 ")
        .ok_or_else(|| Error::Parse(format!("bad zero cache header: {header}")))?;
    let mut t_max = None;
    let mut tol = None;
    for field in rest.split_whitespace() {
        if let Some(v) = field.strip_prefix("t_max=") {
            t_max = v.parse::<f64>().ok();
        } else if let Some(v) = field.strip_prefix("tol=") {
            tol = v.parse::<f64>().ok();
        }
    }
    let (t_max, tol) = match (t_max, tol) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Parse(format!("bad zero cache header: {header}"))),
    };
    let mut zeros = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split('\t');
        let parse = |s: Option<&str>| -> Result<f64> {
            s.and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| Error::Parse(format!("zero cache line {}: {line}", k + 2)))
        };
        let t = parse(parts.next())?;
        let hw = parse(parts.next())?;
        let rounding = |x: f64| 0.5 * 10f64.powi(x.abs().log10().floor() as i32 - 11);
        zeros.push(ZetaZero { t, half_width: hw + rounding(hw) + rounding(t) });
    }
    if zeros.windows(2).any(|w| w[0].t >= w[1].t) {
        return Err(Error::Parse("zero cache is not sorted ascending".into()));
    }
    Ok(ZeroCache { t_max, tol, zeros })
}

/// Write atomically: temp file in the same directory, then rename.
pub fn write_zero_cache(path: &Path, t_max: f64, tol: f64, zeros: &[ZetaZero]) -> Result<()> {
    let text = format_zero_cache(t_max, tol, zeros);
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(d) = dir {
        fs::create_dir_all(d)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_zero_cache(path: &Path) -> Result<ZeroCache> {
    parse_zero_cache(&fs::read_to_string(path)?)
}

/// Zeros up to t_max, served from the cache when it covers the request at
/// the requested tolerance, otherwise recomputed and written back.
pub fn cached_zeros(path: &Path, t_max: f64, acc: &EvalAccuracy) -> Result<Vec<ZetaZero>> {
    if let Ok(cache) = read_zero_cache(path) {
        if cache.t_max >= t_max && cache.tol <= acc.abs_tol {
            return Ok(cache.zeros.into_iter().filter(|z| z.t <= t_max).collect());
        }
    }
    let zeros = find_critical_zeros(t_max, acc)?;
    write_zero_cache(path, t_max, acc.abs_tol, &zeros)?;
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acc() -> EvalAccuracy {
        EvalAccuracy::new(1e-9, 1_000_000).unwrap()
    }

    #[test]
    fn below_first_zero_is_empty() {
        assert!(find_critical_zeros(10.0, &acc()).unwrap().is_empty());
    }

    #[test]
    fn first_zeros_match_tabulated() {
        let zs = find_critical_zeros(26.0, &acc()).unwrap();
        let known = [14.134_725_141_734_69, 21.022_039_638_771_55, 25.010_857_580_145_69];
        assert_eq!(zs.len(), 3);
        for (z, k) in zs.iter().zip(known) {
            assert!((z.t - k).abs() <= z.half_width + 1e-9, "{} vs {k}", z.t);
            assert!(z.half_width <= 1e-9);
        }
    }

    #[test]
    fn parabola_flags_close_pair() {
        assert!(!suspicious(1.0, 0.3, 1.2));
        assert!(suspicious(0.05, 0.01, 0.3));
        assert!(!suspicious(1.0, -0.5, 1.0));
    }

    #[test]
    fn fmt_has_twelve_significant_digits() {
        assert_eq!(fmt12(14.134725141734), "14.1347251417");
        assert_eq!(fmt12(236.524229665816), "236.524229666");
        assert_eq!(fmt12(1e-9), "0.00000000100000000000");
    }

    #[test]
    fn cache_round_trip_keeps_sign_change() {
        let zs = find_critical_zeros(40.0, &acc()).unwrap();
        let text = format_zero_cache(40.0, 1e-9, &zs);
        let back = parse_zero_cache(&text).unwrap();
        assert_eq!(back.zeros.len(), zs.len());
        let a = acc();
        for z in &back.zeros {
            let lo = hardy_z(z.t - z.half_width, &a).unwrap();
            let hi = hardy_z(z.t + z.half_width, &a).unwrap();
            assert!(lo * hi < 0.0, "{z:?}");
        }
        assert_eq!(text, format_zero_cache(40.0, 1e-9, &zs));
    }

    #[test]
    fn rejects_bad_header() {
        assert!(matches!(parse_zero_cache("14.1\t1e-9\n"), Err(Error::Parse(_))));
    }
}
