use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the numerical routines can report.
///
/// Variants are grouped by the subsystem that raises them, but a single enum
/// is shared so that higher layers (the CLI, the acceptance suite) can match
/// on any of them without conversions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // evaluation of ζ, Γ and friends
    #[error("ζ has a pole at s = 1 (|s - 1| = {distance:e})")]
    PoleAtOne { distance: f64 },
    #[error("ξ has poles at s = 0 and s = 1")]
    PoleAtZeroOrOne,
    #[error("Γ has a pole at the nonpositive integer {0}")]
    PoleAtNonpositiveInteger(i64),
    #[error("accuracy {abs_tol:e} not reachable within {max_terms} terms")]
    AccuracyExceeded { abs_tol: f64, max_terms: usize },
    #[error("logarithmic integral needs x > 1, got {0}")]
    BranchAtOne(f64),
    #[error("exponential integral is singular at z = 0")]
    EiAtZero,
    #[error("scan step {step} too coarse near t = {t}: two sign changes share one cell")]
    ScanStepTooCoarse { t: f64, step: f64 },

    // fractal strings
    #[error("depth cap {depth} does not reach the requested scale {needed}")]
    DepthCapExceeded { depth: usize, needed: f64 },
    #[error("invalid string: {0}")]
    InvalidString(String),
    #[error("ε-grid must span at least {required} decades, spans {spanned:.3}")]
    GridTooShort { spanned: f64, required: f64 },
    #[error("target counting function is not monotone (β = {beta} exceeds guard {guard})")]
    NonMonotoneTarget { beta: f64, guard: f64 },

    // complex dimensions
    #[error("series mode needs Re(s) > {abscissa}, got {re_s}")]
    AbscissaViolation { re_s: f64, abscissa: f64 },
    #[error("geometric zeta function has a pole at the evaluation point")]
    PoleHit,
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("s = 1 is a visible complex dimension")]
    PoleAtOneInWindow,

    // operator lab
    #[error("grid functions live on different grids or weights")]
    GridMismatch,
    #[error("support reaches the guard band at the grid boundary")]
    SupportTouchesBoundary,
    #[error("shift by {shift} moves the support outside the grid")]
    ShiftOutOfRange { shift: f64 },
    #[error("support is not bounded below inside the grid")]
    SupportUnbounded,
    #[error("symbol has a pole on the sampled segment Re(s) = {c}")]
    PoleOnSegment { c: f64 },
    #[error("the sampled range passes through a pole")]
    PoleInRange,

    // explicit formula
    #[error("x = {x} outside supported range ({min}, {max}]")]
    RangeExceeded { x: f64, min: f64, max: f64 },
    #[error("zero table holds {available} zeros, {requested} requested")]
    ZeroTableTooSmall { requested: usize, available: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Validation failures (bad inputs) as opposed to computation failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::InvalidString(_)
                | Error::GridTooShort { .. }
                | Error::NonMonotoneTarget { .. }
                | Error::BranchAtOne(_)
                | Error::Parse(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::PoleAtOne { .. } => "PoleAtOne",
            Error::PoleAtZeroOrOne => "PoleAtZeroOrOne",
            Error::PoleAtNonpositiveInteger(_) => "PoleAtNonpositiveInteger",
            Error::AccuracyExceeded { .. } => "AccuracyExceeded",
            Error::BranchAtOne(_) => "BranchAtOne",
            Error::EiAtZero => "EiAtZero",
            Error::ScanStepTooCoarse { .. } => "ScanStepTooCoarse",
            Error::DepthCapExceeded { .. } => "DepthCapExceeded",
            Error::InvalidString(_) => "InvalidString",
            Error::GridTooShort { .. } => "GridTooShort",
            Error::NonMonotoneTarget { .. } => "NonMonotoneTarget",
            Error::AbscissaViolation { .. } => "AbscissaViolation",
            Error::PoleHit => "PoleHit",
            Error::Unsupported(_) => "Unsupported",
            Error::PoleAtOneInWindow => "PoleAtOneInWindow",
            Error::GridMismatch => "GridMismatch",
            Error::SupportTouchesBoundary => "SupportTouchesBoundary",
            Error::ShiftOutOfRange { .. } => "ShiftOutOfRange",
            Error::SupportUnbounded => "SupportUnbounded",
            Error::PoleOnSegment { .. } => "PoleOnSegment",
            Error::PoleInRange => "PoleInRange",
            Error::RangeExceeded { .. } => "RangeExceeded",
            Error::ZeroTableTooSmall { .. } => "ZeroTableTooSmall",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Io(_) => "Io",
            Error::Parse(_) => "Parse",
        }
    }
}
