use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples below this fraction of the peak count as zero for support checks.
pub const NEGLIGIBLE: f64 = 1e-12;

/// A uniform grid t_min, t_min + h, ..., t_max with a guard band at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub t_min: f64,
    pub t_max: f64,
    pub h: f64,
    pub guard: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Self { t_min: -40.0, t_max: 40.0, h: 2f64.powi(-10), guard: 5.0 }
    }
}

impl Grid {
    pub fn new(t_min: f64, t_max: f64, h: f64, guard: f64) -> Result<Self> {
        if !(h > 0.0) || !(t_max > t_min) || !(guard >= 0.0) {
            return Err(Error::InvalidParameter("grid needs t_min < t_max, h > 0, guard ≥ 0".into()));
        }
        let steps = (t_max - t_min) / h;
        if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
            return Err(Error::InvalidParameter(format!("(t_max - t_min)/h = {steps} is not an integer")));
        }
        if 2.0 * guard >= t_max - t_min {
            return Err(Error::InvalidParameter("guard bands cover the whole grid".into()));
        }
        Ok(Self { t_min, t_max, h, guard })
    }

    pub fn len(&self) -> usize {
        ((self.t_max - self.t_min) / self.h).round() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn t(&self, i: usize) -> f64 {
        self.t_min + i as f64 * self.h
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.t(i)).collect()
    }

    /// Number of samples inside each guard band.
    pub fn guard_samples(&self) -> usize {
        (self.guard / self.h).floor() as usize
    }
}

/// Samples of a function on a grid, seen as an element of
/// H_c = L²(ℝ, e^{-2ct} dt).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub grid: Grid,
    pub c: f64,
    pub samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Grid, c: f64, samples: Vec<Complex64>) -> Result<Self> {
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter(format!("weight c must be ≥ 0, got {c}")));
        }
        if samples.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                grid.len()
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("samples must be finite".into()));
        }
        Ok(Self { grid, c, samples })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: Grid, c: f64, f: F) -> Result<Self> {
        let samples = (0..grid.len()).map(|i| f(grid.t(i))).collect();
        Self::new(grid, c, samples)
    }

    pub fn from_real<F: Fn(f64) -> f64>(grid: Grid, c: f64, f: F) -> Result<Self> {
        Self::from_fn(grid, c, |t| Complex64::new(f(t), 0.0))
    }

    pub fn zeros_like(&self) -> Self {
        Self { grid: self.grid, c: self.c, samples: vec![Complex64::new(0.0, 0.0); self.samples.len()] }
    }

    pub(crate) fn with_samples(&self, samples: Vec<Complex64>) -> Self {
        Self { grid: self.grid, c: self.c, samples }
    }

    pub fn t_max(&self) -> f64 {
        self.grid.t_max
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Index range [first, last] of samples above the negligible level.
    pub fn support_indices(&self) -> Option<(usize, usize)> {
        let cut = NEGLIGIBLE * self.peak();
        let first = self.samples.iter().position(|z| z.norm() > cut)?;
        let last = self.samples.iter().rposition(|z| z.norm() > cut)?;
        Some((first, last))
    }

    pub fn support(&self) -> Option<(f64, f64)> {
        self.support_indices().map(|(a, b)| (self.grid.t(a), self.grid.t(b)))
    }

    /// True when the function is negligible in the left guard band.
    pub fn clear_of_left_guard(&self) -> bool {
        match self.support_indices() {
            None => true,
            Some((a, _)) => a >= self.grid.guard_samples(),
        }
    }

    pub fn clear_of_right_guard(&self) -> bool {
        match self.support_indices() {
            None => true,
            Some((_, b)) => b + self.grid.guard_samples() < self.samples.len(),
        }
    }

    pub(crate) fn require_inside_guard(&self) -> Result<()> {
        if self.clear_of_left_guard() && self.clear_of_right_guard() {
            Ok(())
        } else {
            Err(Error::SupportTouchesBoundary)
        }
    }

    pub(crate) fn require_compatible(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid || self.c != other.c {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    pub fn scale(&self, a: Complex64) -> Self {
        self.with_samples(self.samples.iter().map(|z| z * a).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_compatible(other)?;
        Ok(self.with_samples(self.samples.iter().zip(&other.samples).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_compatible(other)?;
        Ok(self.with_samples(self.samples.iter().zip(&other.samples).map(|(a, b)| a - b).collect()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.require_compatible(other)?;
        Ok(self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// ⟨f, g⟩_c = ∫ f(t) conj(g(t)) e^{-2ct} dt by the trapezoid rule.
pub fn weighted_inner(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.require_compatible(g)?;
    let n = f.samples.len();
    let grid = f.grid;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let w = (-2.0 * f.c * grid.t(i)).exp() * if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
        sum += f.samples[i] * g.samples[i].conj() * w;
    }
    Ok(sum * grid.h)
}

/// ‖f‖_c.
pub fn weighted_norm(f: &GridFunction) -> f64 {
    let n = f.samples.len();
    let mut sum = 0.0;
    for (i, z) in f.samples.iter().enumerate() {
        let w = (-2.0 * f.c * f.grid.t(i)).exp() * if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
        sum += z.norm_sqr() * w;
    }
    (sum * f.grid.h).sqrt()
}

/// The unitary map W: H_c → H_0, (Wf)(t) = e^{-ct} f(t).
pub fn to_unweighted(f: &GridFunction) -> GridFunction {
    let samples = f
        .samples
        .iter()
        .enumerate()
        .map(|(i, z)| z * (-f.c * f.grid.t(i)).exp())
        .collect();
    GridFunction { grid: f.grid, c: 0.0, samples }
}

/// W⁻¹: H_0 → H_c, u ↦ e^{ct} u.
pub fn from_unweighted(u: &GridFunction, c: f64) -> Result<GridFunction> {
    if u.c != 0.0 {
        return Err(Error::GridMismatch);
    }
    let samples = u.samples.iter().enumerate().map(|(i, z)| z * (c * u.grid.t(i)).exp()).collect();
    GridFunction::new(u.grid, c, samples)
}

/// Smooth bump exp(-1/(u(1-u))) on (a, b), u = (t-a)/(b-a); zero elsewhere.
pub fn bump(a: f64, b: f64) -> impl Fn(f64) -> f64 {
    move |t| {
        let u = (t - a) / (b - a);
        if u <= 0.0 || u >= 1.0 {
            0.0
        } else {
            (-1.0 / (u * (1.0 - u))).exp()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Grid {
        Grid::new(-10.0, 10.0, 1e-3, 2.0).unwrap()
    }

    #[test]
    fn grid_must_be_integral() {
        assert!(Grid::new(0.0, 1.0, 0.3, 0.1).is_err());
        assert_eq!(Grid::default().len(), 80 * 1024 + 1);
    }

    #[test]
    fn gaussian_with_exponential_weight() {
        // ∫ e^{-t²} e^{-2t} dt = √π e
        let f = GridFunction::from_real(small(), 1.0, |t| (-0.5 * t * t).exp()).unwrap();
        let exact = (std::f64::consts::PI.sqrt() * 1f64.exp()).sqrt();
        assert!((weighted_norm(&f) / exact - 1.0).abs() < 1e-8);
    }

    #[test]
    fn weight_cancels() {
        let g = |t: f64| (-t * t).exp();
        let f = GridFunction::from_real(small(), 0.7, |t| (0.7 * t).exp() * g(t)).unwrap();
        let f0 = GridFunction::from_real(small(), 0.0, g).unwrap();
        assert!((weighted_norm(&f) - weighted_norm(&f0)).abs() < 1e-12);
        let u = to_unweighted(&f);
        assert!((weighted_norm(&u) - weighted_norm(&f)).abs() < 1e-12);
        let back = from_unweighted(&u, 0.7).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-12 * f.peak());
    }

    #[test]
    fn mismatch_is_reported() {
        let f = GridFunction::from_real(small(), 0.0, bump(0.0, 1.0)).unwrap();
        let mut g = f.clone();
        g.c = 1.0;
        assert!(matches!(weighted_inner(&f, &g), Err(Error::GridMismatch)));
    }

    #[test]
    fn guard_detection() {
        let inside = GridFunction::from_real(small(), 0.0, bump(-1.0, 1.0)).unwrap();
        assert!(inside.require_inside_guard().is_ok());
        let edge = GridFunction::from_real(small(), 0.0, bump(-9.5, -7.0)).unwrap();
        assert!(!edge.clear_of_left_guard());
        assert!(edge.clear_of_right_guard());
    }
}
