//! The weighted space H_c, the infinitesimal shift ∂_c, the spectral operator
//! a = ζ(∂_c) with its Euler factors and Möbius inverse, and truncations of a.
//!
//! Functions live on uniform grids. Shift sums only move mass to the right,
//! so they need the input to vanish on the left guard band but are happy to
//! run off the right end of the grid, where the output is simply cut.

mod calculus;
mod grid;
mod shift;
mod spectrum;
mod witness;

pub use calculus::{apply_functional_calculus, Symbol};
pub use grid::{bump, from_unweighted, to_unweighted, weighted_inner, weighted_norm, Grid, GridFunction, NEGLIGIBLE};
pub use shift::{
    adjoint_infinitesimal_shift, apply_euler_factor, apply_mobius_inverse, apply_spectral_operator_direct,
    compose_euler_product, infinitesimal_shift, shift_group, ShiftRule, ShiftSum, MAX_SHIFT_TERMS,
};
pub use spectrum::{
    boundedness_table, full_line_spectrum_probe, global_operator_curve, quasi_invertibility_scan, rh_diagnostic,
    truncated_invertibility, truncated_spectrum_curve, truncated_spectrum_curve_punctured, BoundednessRow,
    CurveSymbol, Decision, FullLineProbe, InvertibilityVerdict, ProbeRow, QuasiReport, QuasiVerdict, RhDiagnostic,
    ScanConfig, SpectrumCurve, SymmetryCheck, TruncationSpec, ZeroTable, PUNCTURE, SAFETY_FACTOR,
};
pub use witness::{approximate_point_spectrum_witness, point_spectrum_residuals, WitnessRow, WITNESS_STEP};
