//! Numerical laboratory for fractal strings, their complex dimensions, and
//! the spectral operator ζ(∂) acting on weighted L² spaces.

pub mod dimensions;
pub mod error;
pub mod explicit;
pub mod operator;
pub mod quad;
pub mod spectral;
pub mod strings;
pub mod zeta;

pub use dimensions::{ComplexDimension, SeriesValue, TubeFormulaValue, Window};
pub use error::{Error, Result};
pub use explicit::{DualityRow, Reconstruction};
pub use operator::{GridFunction, InvertibilityVerdict, SpectrumCurve, TruncationSpec};
pub use spectral::{InverseProblemReport, LapoReport, WeylRemainder};
pub use strings::{FractalString, GeneralizedString};
pub use zeta::{ComplexValue, EvalAccuracy, ZetaZero};
