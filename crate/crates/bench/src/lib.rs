//! Shared fixtures for the criterion benches.

use num_complex::Complex64;
use zetalab::operator::{bump, Grid, GridFunction};

/// Points on the critical strip at increasing heights.
pub fn strip_points() -> Vec<Complex64> {
    [10.0, 100.0, 1000.0].iter().map(|&t| Complex64::new(0.5, t)).collect()
}

/// A bump on [0, 1/2] over [-3, 10] with step 2^-10, weight c.
pub fn operator_input(c: f64) -> GridFunction {
    let grid = Grid::new(-3.0, 10.0, 2f64.powi(-10), 1.0).expect("valid grid");
    GridFunction::from_real(grid, c, bump(0.0, 0.5)).expect("bump fits")
}
