//! Approximate eigenfunctions of ∂_c: Gaussian-windowed exponentials.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{weighted_norm, Grid, GridFunction};
use super::shift::infinitesimal_shift;
use crate::error::{Error, Result};

/// Grid step used for the windowed exponentials.
pub const WITNESS_STEP: f64 = 1.0 / 128.0;
/// Window half-width in units of the Gaussian width.
const WINDOW_SPAN: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub width: f64,
    /// ‖∂f − λf‖_c with ‖f‖_c = 1
    pub residual: f64,
    /// ‖G′‖/(width·‖G‖) = 1/(√2·width), the continuum value for λ on the line
    pub predicted: f64,
}

/// Residuals ‖∂_c f_w − λ f_w‖_c for f_w(t) = e^{(c+iτ)t} e^{-(t/w)²/2},
/// normalized in H_c. Computed after the unitary map W, where f_w becomes
/// u(t) = e^{iτt} e^{-(t/w)²/2} and ∂_c becomes c + d/dt.
pub fn point_spectrum_residuals(c: f64, tau: f64, lambda: Complex64, widths: &[f64]) -> Result<Vec<WitnessRow>> {
    if widths.is_empty() || widths.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::InvalidParameter("widths must be positive".into()));
    }
    if !(c >= 0.0) {
        return Err(Error::InvalidParameter(format!("c must be ≥ 0, got {c}")));
    }
    let w_max = widths.iter().cloned().fold(0.0, f64::max);
    let guard = 5.0;
    let half = ((WINDOW_SPAN * w_max + guard) / WITNESS_STEP).ceil() * WITNESS_STEP;
    let grid = Grid::new(-half, half, WITNESS_STEP, guard)?;
    widths
        .iter()
        .map(|&w| {
            let u = GridFunction::from_fn(grid, 0.0, |t| {
                Complex64::from_polar((-0.5 * (t / w).powi(2)).exp(), tau * t)
            })?;
            let norm = weighted_norm(&u);
            let du = infinitesimal_shift(&u)?;
            let shift = Complex64::new(c, 0.0) - lambda;
            let r = du.add(&u.scale(shift))?;
            Ok(WitnessRow {
                width: w,
                residual: weighted_norm(&r) / norm,
                predicted: 1.0 / (std::f64::consts::SQRT_2 * w),
            })
        })
        .collect()
}

/// Residuals for λ = c + iτ, a point of σ(∂_c).
pub fn approximate_point_spectrum_witness(c: f64, tau: f64, widths: &[f64]) -> Result<Vec<WitnessRow>> {
    point_spectrum_residuals(c, tau, Complex64::new(c, tau), widths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_halves_per_doubling() {
        let rows = approximate_point_spectrum_witness(0.5, 3.0, &[5.0, 10.0, 20.0, 40.0]).unwrap();
        for pair in rows.windows(2) {
            let ratio = pair[1].residual / pair[0].residual;
            assert!((ratio - 0.5).abs() < 0.025, "{ratio}");
        }
        for r in &rows {
            assert!((r.residual / r.predicted - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn off_line_residual_stays_large() {
        let rows = point_spectrum_residuals(0.5, 3.0, Complex64::new(0.8, 3.0), &[5.0, 10.0, 20.0, 40.0]).unwrap();
        assert!(rows.iter().all(|r| r.residual >= 0.3 - 1e-9));
    }
}
