//! Minkowski content and dimension from sampled tube volumes.

use serde::{Deserialize, Serialize};

use super::FractalString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiEstimate {
    /// max over the grid of V(ε)/ε^{1-D_hint}
    pub upper_content: f64,
    /// min over the grid of V(ε)/ε^{1-D_hint}
    pub lower_content: f64,
    /// 1 - slope of the least-squares line through (log ε, log V)
    pub dimension: f64,
    /// standard error of the slope
    pub dimension_stderr: f64,
    /// root-mean-square residual of the log-log fit
    pub residual: f64,
}

/// `n` points log-uniform from `hi` down to `lo` (descending).
pub fn log_grid(hi: f64, lo: f64, n: usize) -> Vec<f64> {
    let (a, b) = (hi.ln(), lo.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1).max(1) as f64).exp())
        .collect()
}

pub fn estimate_minkowski(
    string: &FractalString,
    d_hint: f64,
    eps_grid: &[f64],
) -> Result<MinkowskiEstimate> {
    if !(d_hint >= 0.0 && d_hint < 1.0) {
        return Err(Error::InvalidParameter(format!("D_hint must lie in [0,1), got {d_hint}")));
    }
    if eps_grid.len() < 3 || eps_grid.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::InvalidParameter("ε-grid needs ≥ 3 positive points".into()));
    }
    let hi = eps_grid.iter().cloned().fold(f64::MIN, f64::max);
    let lo = eps_grid.iter().cloned().fold(f64::MAX, f64::min);
    let spanned = (hi / lo).log10();
    if spanned < 4.0 {
        return Err(Error::GridTooShort { spanned, required: 4.0 });
    }
    let mut upper = f64::MIN;
    let mut lower = f64::MAX;
    let mut xs = Vec::with_capacity(eps_grid.len());
    let mut ys = Vec::with_capacity(eps_grid.len());
    for &e in eps_grid {
        let v = string.direct_tube_volume(e)?;
        let ratio = v / e.powf(1.0 - d_hint);
        upper = upper.max(ratio);
        lower = lower.min(ratio);
        xs.push(e.ln());
        ys.push(v.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum();
    let stderr = (ss_res / (n - 2.0) / sxx).sqrt();
    Ok(MinkowskiEstimate {
        upper_content: upper,
        lower_content: lower,
        dimension: 1.0 - slope,
        dimension_stderr: stderr,
        residual: (ss_res / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{cantor_string, power_law_string_infinite};
    use super::*;

    #[test]
    fn cantor_is_not_measurable() {
        let d = 2f64.ln() / 3f64.ln();
        let est = estimate_minkowski(&cantor_string(), d, &log_grid(1e-2, 1e-8, 400)).unwrap();
        assert!(est.upper_content > est.lower_content * 1.01);
        assert!((est.dimension - d).abs() < 0.01, "{}", est.dimension);
    }

    #[test]
    fn power_law_is_measurable() {
        let s = power_law_string_infinite(0.6, 1.0, 1_000_000).unwrap();
        let est = estimate_minkowski(&s, 0.6, &log_grid(1e-6, 1e-10, 50)).unwrap();
        assert!(est.upper_content / est.lower_content < 1.02);
        assert!((est.dimension - 0.6).abs() < 0.01);
    }

    #[test]
    fn single_interval_has_dimension_zero() {
        let s = FractalString::single(1.0).unwrap();
        let est = estimate_minkowski(&s, 0.0, &log_grid(1e-2, 1e-7, 30)).unwrap();
        assert!(est.dimension.abs() < 1e-12);
    }

    #[test]
    fn short_grid_rejected() {
        let r = estimate_minkowski(&cantor_string(), 0.6, &log_grid(1e-2, 1e-4, 10));
        assert!(matches!(r, Err(Error::GridTooShort { .. })));
    }
}
