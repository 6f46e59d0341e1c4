use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "zetalab", version, about = "Fractal strings, complex dimensions and the spectral operator ζ(∂)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// Write `<command>.<ext>` into this directory instead of standard output
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
    /// Output format; each command has a natural default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Absolute tolerance for ζ and related series
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub abs_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Zeros of ζ on the critical line up to a height, served from the cache
    Zeros(ZerosArgs),
    /// ζ, ζ′ and ξ at one point
    ZetaEval(ZetaEvalArgs),
    /// Summary of a fractal string
    StringInfo(StringArgs),
    /// Direct tube volumes against the sum over complex dimensions
    Tube(TubeArgs),
    /// Complex dimensions and residues of a lattice string
    Dims(DimsArgs),
    /// Geometric counting function against its explicit formula
    Counting(CountingArgs),
    /// Frequency counting function by three independent methods
    SpectralCount(SpectralCountArgs),
    /// Remainder of the frequency count after the Weyl term
    Weyl(WeylArgs),
    /// Weyl-remainder coefficient for l_j = j^{-1/D}
    Lapo(LapoArgs),
    /// Oscillation transfer from lengths to frequencies
    InverseProblem(InverseProblemArgs),
    /// Residuals of the shift-operator identities on a grid function
    OperatorCheck(OperatorCheckArgs),
    /// Sampled spectrum ζ(c + iτ), |τ| ≤ T, of a truncated operator
    TruncatedSpectrum(SpectrumArgs),
    /// Invertibility verdict for a truncated operator
    Invertibility(InvertibilityArgs),
    /// Quasi-invertibility over a set of c values, with the ξ symmetry check
    RhScan(RhScanArgs),
    /// Sampled symbol ξ(c + iτ) of the global operator
    GlobalXi(SpectrumArgs),
    /// Prime-power count against its reconstruction from zeros
    Explicit(ExplicitArgs),
    /// Residuals of windowed exponentials as approximate eigenfunctions of ∂
    MomentumWitness(WitnessArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StringArgs {
    /// `cantor`, `lattice:b,m[,depth]`, inline JSON, or a path to a JSON file
    #[arg(long, default_value = "cantor")]
    pub string: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZerosArgs {
    #[arg(long, default_value_t = 100.0)]
    pub tmax: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZetaEvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub im: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TubeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub string: StringArgs,
    /// Number of decades of ε below 1/2
    #[arg(long, default_value_t = 6)]
    pub eps_decades: u32,
    #[arg(long, default_value_t = 10)]
    pub points_per_decade: u32,
    /// Height of the window of complex dimensions
    #[arg(long, default_value_t = 200.0)]
    pub tmax: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DimsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub string: StringArgs,
    #[arg(long, default_value_t = 50.0)]
    pub tmax: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CountingArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub string: StringArgs,
    #[arg(long, value_delimiter = ',', default_value = "10,30,100")]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 500.0)]
    pub tmax: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectralCountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub string: StringArgs,
    #[arg(long, value_delimiter = ',', default_value = "10,30,100,1000")]
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WeylArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub string: StringArgs,
    #[arg(long, default_value_t = 10.0)]
    pub xmin: f64,
    #[arg(long, default_value_t = 1e5)]
    pub xmax: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LapoArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.4,0.6")]
    pub d: Vec<f64>,
    #[arg(long, default_value_t = 1e5)]
    pub x: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InverseProblemArgs {
    #[arg(long, default_value_t = 0.5)]
    pub d: f64,
    #[arg(long, value_delimiter = ',', default_value = "14.134725,10")]
    pub tau: Vec<f64>,
    #[arg(long, default_value_t = 0.005)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OperatorCheckArgs {
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
    /// Largest prime in the Euler product
    #[arg(long, default_value_t = 100)]
    pub prime_cap: u64,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    pub grid_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub grid_max: f64,
    /// Grid step is 2^-k
    #[arg(long, default_value_t = 10)]
    pub step_log2: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub c: f64,
    #[arg(long, default_value_t = 50.0)]
    pub t: f64,
    #[arg(long, default_value_t = 0.01)]
    pub resolution: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InvertibilityArgs {
    #[arg(long)]
    pub c: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 0.0)]
    pub t0: f64,
    #[arg(long, default_value_t = 0.01)]
    pub resolution: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RhScanArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.4,0.6,0.7")]
    pub c: Vec<f64>,
    #[arg(long, default_value_t = 100.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub resolution: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExplicitArgs {
    #[arg(long, value_delimiter = ',', default_value = "100.5")]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    pub zeros: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WitnessArgs {
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    #[arg(long, default_value_t = 14.0, allow_hyphen_values = true)]
    pub tau: f64,
    #[arg(long, value_delimiter = ',', default_value = "5,10,20,40")]
    pub widths: Vec<f64>,
}
