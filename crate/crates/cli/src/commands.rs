use std::fmt::Write as _;
use std::path::PathBuf;

use num_complex::Complex64;
use serde_json::{json, Value};

use zetalab::dimensions::{
    complex_dimensions_in, dimensions_to_csv, explicit_counting, reconstruction_to_csv, tube_formula_via_dimensions,
    ReconstructionRow, Window,
};
use zetalab::explicit::{duality_report, duality_to_csv, COUNT_MAX};
use zetalab::operator::{
    adjoint_infinitesimal_shift, apply_functional_calculus, apply_mobius_inverse, apply_spectral_operator_direct,
    approximate_point_spectrum_witness, bump, compose_euler_product, global_operator_curve, infinitesimal_shift,
    rh_diagnostic, shift_group, truncated_invertibility, truncated_spectrum_curve_punctured, weighted_inner,
    weighted_norm, Grid, GridFunction, ScanConfig, ShiftRule, SpectrumCurve, Symbol, TruncationSpec, ZeroTable,
    SAFETY_FACTOR,
};
use zetalab::spectral::{
    inverse_problem_experiment, lapo_coefficient_check, remainder_to_csv, spectral_count_convolution,
    spectral_count_direct, spectral_count_floor, weyl_remainder_profile,
};
use zetalab::dimensions::abscissa_of_convergence;
use zetalab::strings::{cantor_string, estimate_minkowski, log_grid};
use zetalab::zeta::{
    cached_zeros, read_zero_cache, xi, zero_count_estimate, zeta_and_derivative, EvalAccuracy, ZetaZero, SCAN_STEP,
};
use zetalab::FractalString;

use crate::args::*;
use crate::output::Report;
use crate::Failure;

fn require(ok: bool, msg: impl Into<String>) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::validation("InvalidParameter", msg.into()))
    }
}

fn finite(name: &str, v: f64) -> Result<(), Failure> {
    require(v.is_finite(), format!("--{name} must be finite, got {v}"))
}

fn positive(name: &str, v: f64) -> Result<(), Failure> {
    require(v.is_finite() && v > 0.0, format!("--{name} must be positive, got {v}"))
}

pub fn parse_string(spec: &str) -> Result<FractalString, Failure> {
    let spec = spec.trim();
    if spec == "cantor" {
        return Ok(cantor_string());
    }
    if let Some(rest) = spec.strip_prefix("lattice:") {
        let parts: Vec<&str> = rest.split(',').collect();
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::validation("InvalidString", format!("bad number `{s}` in `{spec}`")))
        };
        return match parts.as_slice() {
            [b, m] => Ok(FractalString::lattice_with_tail(num(b)?, num(m)?, 1e-12)?),
            [b, m, d] => {
                let depth = d
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::validation("InvalidString", format!("bad depth `{d}` in `{spec}`")))?;
                Ok(FractalString::lattice(num(b)?, num(m)?, depth)?)
            }
            _ => Err(Failure::validation("InvalidString", format!("expected lattice:b,m[,depth], got `{spec}`"))),
        };
    }
    if spec.starts_with('{') {
        return Ok(FractalString::from_json(spec)?);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::validation("InvalidString", format!("cannot read string file `{spec}`: {e}")))?;
    Ok(FractalString::from_json(&text)?)
}

fn require_lattice(s: &FractalString) -> Result<(), Failure> {
    require(s.is_lattice(), "this command needs a lattice string (`cantor` or `lattice:b,m`)")
}

fn cache_file() -> PathBuf {
    let dir = if let Some(d) = std::env::var_os("ZETALAB_CACHE") {
        PathBuf::from(d)
    } else if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        PathBuf::from(d).join("zetalab")
    } else if let Some(h) = std::env::var_os("HOME") {
        PathBuf::from(h).join(".cache").join("zetalab")
    } else {
        PathBuf::from(".zetalab-cache")
    };
    dir.join("zeros.tsv")
}

/// Zeros up to `t_max`, always as stored in the cache so that a fresh
/// computation and a cache hit give identical values.
fn zeros_up_to(t_max: f64, acc: &EvalAccuracy) -> Result<Vec<ZetaZero>, Failure> {
    let path = cache_file();
    cached_zeros(&path, t_max, acc)?;
    let cache = read_zero_cache(&path)?;
    Ok(cache.zeros.into_iter().filter(|z| z.t <= t_max).collect())
}

fn first_n_zeros(n: usize, acc: &EvalAccuracy) -> Result<Vec<ZetaZero>, Failure> {
    let mut t = 20.0;
    while zero_count_estimate(t) < n as f64 + 2.0 {
        t *= 1.1;
    }
    loop {
        let zs = zeros_up_to(t, acc)?;
        if zs.len() >= n {
            return Ok(zs[..n].to_vec());
        }
        t *= 1.1;
    }
}

fn c_json(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn curve_report(curve: &SpectrumCurve) -> Report {
    Report::csv(curve.to_csv())
        .disclose("samples", curve.tau_samples.len())
        .disclose("min_modulus", format!("{:.15e}", curve.min_modulus))
        .disclose("argmin_tau", format!("{:.12}", curve.argmin_tau))
        .disclose("pole_cut_out", curve.pole_at_infinity)
}

/// Format of the report each command produces.
pub fn natural_format(command: &Command) -> Format {
    match command {
        Command::ZetaEval(_)
        | Command::StringInfo(_)
        | Command::Lapo(_)
        | Command::InverseProblem(_)
        | Command::OperatorCheck(_)
        | Command::Invertibility(_)
        | Command::RhScan(_) => Format::Json,
        _ => Format::Csv,
    }
}

pub fn run(command: &Command, acc: &EvalAccuracy) -> Result<Report, Failure> {
    match command {
        Command::Zeros(a) => {
            positive("tmax", a.tmax)?;
            require(a.tmax <= 1e4, "--tmax above 1e4 is outside the supported range")?;
            let zs = zeros_up_to(a.tmax, acc)?;
            let mut out = String::from("index,t,half_width\n");
            for (i, z) in zs.iter().enumerate() {
                let _ = writeln!(out, "{},{},{:.3e}", i + 1, z.t, z.half_width);
            }
            Ok(Report::csv(out)
                .disclose("t_max", a.tmax)
                .disclose("count", zs.len())
                .disclose("scan_step", SCAN_STEP))
        }
        Command::ZetaEval(a) => {
            finite("re", a.re)?;
            finite("im", a.im)?;
            let s = Complex64::new(a.re, a.im);
            let (z, dz) = zeta_and_derivative(s, acc)?;
            let x = xi(s, acc).ok();
            Ok(Report::json(json!({
                "s": c_json(s),
                "zeta": c_json(z),
                "zeta_modulus": z.norm(),
                "zeta_derivative": c_json(dz),
                "xi": x.map(c_json),
            })))
        }
        Command::StringInfo(a) => {
            let s = parse_string(&a.string)?;
            let abscissa = abscissa_of_convergence(&s);
            let d_hint = abscissa.value.clamp(0.0, 0.999);
            let mink = estimate_minkowski(&s, d_hint, &log_grid(1e-2, 1e-8, 40)).ok();
            let levels: Vec<Value> =
                s.level_iter().take(5).map(|l| json!({"length": l.length, "multiplicity": l.weight})).collect();
            let repr: Value = serde_json::from_str(&s.to_json()).expect("string JSON parses");
            Ok(Report::json(json!({
                "string": repr,
                "total_length": s.total_length(),
                "level_count": s.level_count(),
                "first_levels": levels,
                "truncation_bound": s.truncation_bound(),
                "materialized_up_to": s.materialized_up_to(),
                "abscissa": abscissa,
                "minkowski": mink,
            })))
        }
        Command::Tube(a) => {
            let s = parse_string(&a.string.string)?;
            require_lattice(&s)?;
            require((1..=12).contains(&a.eps_decades), "--eps-decades must lie in 1..=12")?;
            require((1..=100).contains(&a.points_per_decade), "--points-per-decade must lie in 1..=100")?;
            positive("tmax", a.tmax)?;
            let window = Window::new(-10.0, a.tmax)?;
            let n = a.eps_decades * a.points_per_decade;
            let mut out = String::from("epsilon,direct,via_dimensions,rel_error\n");
            let mut terms = 0;
            for k in 1..=n {
                let eps = 0.5 * 10f64.powf(-(k as f64) / a.points_per_decade as f64);
                let direct = s.direct_tube_volume(eps)?;
                let v = tube_formula_via_dimensions(&s, eps, &window)?;
                terms = v.terms;
                let _ = writeln!(
                    out,
                    "{:.12e},{:.15e},{:.15e},{:.3e}",
                    eps,
                    direct,
                    v.volume,
                    (v.volume - direct).abs() / direct
                );
            }
            Ok(Report::csv(out)
                .disclose("window_t_max", a.tmax)
                .disclose("dimensions_used", terms)
                .disclose("string_truncation_bound", format!("{:e}", s.truncation_bound())))
        }
        Command::Dims(a) => {
            let s = parse_string(&a.string.string)?;
            require_lattice(&s)?;
            positive("tmax", a.tmax)?;
            let dims = complex_dimensions_in(&s, &Window::new(-1.0, a.tmax)?)?;
            Ok(Report::csv(dimensions_to_csv(&dims)).disclose("window_t_max", a.tmax).disclose("count", dims.len()))
        }
        Command::Counting(a) => {
            let s = parse_string(&a.string.string)?;
            require_lattice(&s)?;
            positive("tmax", a.tmax)?;
            for &x in &a.x {
                positive("x", x)?;
            }
            let window = Window::new(-1.0, a.tmax)?;
            let terms = complex_dimensions_in(&s, &window)?.len();
            let rows = a
                .x
                .iter()
                .map(|&x| {
                    Ok(ReconstructionRow {
                        x,
                        exact: s.geometric_counting(x)?,
                        reconstructed: explicit_counting(&s, x, &window, 1)?,
                        terms,
                    })
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(Report::csv(reconstruction_to_csv(&rows)).disclose("window_t_max", a.tmax))
        }
        Command::SpectralCount(a) => {
            let s = parse_string(&a.string.string)?;
            for &x in &a.x {
                positive("x", x)?;
                require(x <= 1e7, format!("--x {x} exceeds 1e7"))?;
            }
            let mut out = String::from("x,direct,convolution,floor_sum\n");
            for &x in &a.x {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    x,
                    spectral_count_direct(&s, x)?,
                    spectral_count_convolution(&s, x)?,
                    spectral_count_floor(&s, x)?
                );
            }
            Ok(Report::csv(out).disclose("jump_convention", "half weight at a jump"))
        }
        Command::Weyl(a) => {
            let s = parse_string(&a.string.string)?;
            positive("xmin", a.xmin)?;
            positive("xmax", a.xmax)?;
            require(a.xmax > a.xmin && a.xmax <= 1e7, "need xmin < xmax ≤ 1e7")?;
            require(a.points >= 2, "--points must be at least 2")?;
            let mut xs = log_grid(a.xmax, a.xmin, a.points);
            xs.reverse();
            Ok(Report::csv(remainder_to_csv(&weyl_remainder_profile(&s, &xs)?))
                .disclose("string_truncation_bound", format!("{:e}", s.truncation_bound())))
        }
        Command::Lapo(a) => {
            for &d in &a.d {
                require(d > 0.0 && d < 1.0, format!("--d must lie in (0, 1), got {d}"))?;
            }
            require(a.x >= 1e2 && a.x <= 1e6, "--x must lie in [1e2, 1e6]")?;
            let rows = a.d.iter().map(|&d| Ok(lapo_coefficient_check(d, a.x, acc)?)).collect::<Result<Vec<_>, Failure>>()?;
            Ok(Report::json(json!(rows)).disclose("minkowski_eps_range", "[1e-10, 1e-6]"))
        }
        Command::InverseProblem(a) => {
            require(a.d > 0.0 && a.d < 1.0, format!("--d must lie in (0, 1), got {}", a.d))?;
            positive("beta", a.beta)?;
            for &t in &a.tau {
                positive("tau", t)?;
            }
            let rows =
                a.tau.iter().map(|&t| Ok(inverse_problem_experiment(a.d, t, a.beta, acc)?)).collect::<Result<Vec<_>, Failure>>()?;
            Ok(Report::json(json!(rows)))
        }
        Command::OperatorCheck(a) => operator_check(a, acc),
        Command::TruncatedSpectrum(a) => {
            finite("c", a.c)?;
            positive("t", a.t)?;
            positive("resolution", a.resolution)?;
            let curve = truncated_spectrum_curve_punctured(
                TruncationSpec::plain(a.c, a.t)?,
                &ScanConfig::new(a.resolution, 0.0)?,
                acc,
            )?;
            Ok(curve_report(&curve).disclose("resolution", a.resolution))
        }
        Command::GlobalXi(a) => {
            finite("c", a.c)?;
            positive("t", a.t)?;
            positive("resolution", a.resolution)?;
            let curve = global_operator_curve(a.c, a.t, &ScanConfig::new(a.resolution, 0.0)?, acc)?;
            Ok(curve_report(&curve).disclose("resolution", a.resolution))
        }
        Command::Invertibility(a) => {
            finite("c", a.c)?;
            positive("t", a.t)?;
            require(a.t0 >= 0.0 && a.t0 < a.t, "need 0 ≤ t0 < t")?;
            positive("resolution", a.resolution)?;
            let spec = TruncationSpec::new(a.c, a.t, a.t0)?;
            let cfg = ScanConfig::new(a.resolution, 0.0)?;
            let zeros = if a.c == 0.5 { zeros_up_to(a.t + 1.0, acc)? } else { Vec::new() };
            let t_max = if a.c == 0.5 { a.t + 1.0 } else { 0.0 };
            let v = truncated_invertibility(spec, &cfg, ZeroTable { zeros: &zeros, t_max }, acc)?;
            Ok(Report::json(v.to_json())
                .disclose("resolution", a.resolution)
                .disclose("safety_factor", SAFETY_FACTOR))
        }
        Command::RhScan(a) => {
            positive("tmax", a.tmax)?;
            positive("resolution", a.resolution)?;
            require(!a.c.is_empty(), "--c needs at least one value")?;
            for &c in &a.c {
                require(c > 0.0 && c < 1.0 && c != 0.5, format!("--c values must lie in (0, 1) \\ {{1/2}}, got {c}"))?;
            }
            let cfg = ScanConfig::new(a.resolution, 0.0)?;
            let zeros = zeros_up_to(a.tmax + 1.0, acc)?;
            let diag = rh_diagnostic(&a.c, a.tmax, &cfg, ZeroTable { zeros: &zeros, t_max: a.tmax + 1.0 }, acc)?;
            Ok(Report::json(serde_json::to_value(&diag).expect("diagnostic serializes"))
                .disclose("resolution", a.resolution)
                .disclose("safety_factor", SAFETY_FACTOR)
                .disclose("zero_table_t_max", a.tmax + 1.0))
        }
        Command::Explicit(a) => {
            require(a.zeros >= 1 && a.zeros <= 10_000, "--zeros must lie in 1..=10000")?;
            for &x in &a.x {
                require(x > 2.0 && x <= COUNT_MAX, format!("--x must lie in (2, 1e7], got {x}"))?;
            }
            let zeros = first_n_zeros(a.zeros, acc)?;
            let rows = duality_report(&a.x, a.zeros, &zeros)?;
            Ok(Report::csv(duality_to_csv(&rows)).disclose("zeros_used", a.zeros).disclose(
                "largest_zero_ordinate",
                format!("{:.12}", zeros.last().map(|z| z.t).unwrap_or(0.0)),
            ))
        }
        Command::MomentumWitness(a) => {
            require(a.c.is_finite() && a.c >= 0.0, "--c must be ≥ 0")?;
            finite("tau", a.tau)?;
            require(!a.widths.is_empty(), "--widths needs at least one value")?;
            for &w in &a.widths {
                require(w > 0.0 && w <= 100.0, format!("widths must lie in (0, 100], got {w}"))?;
            }
            let rows = approximate_point_spectrum_witness(a.c, a.tau, &a.widths)?;
            let mut out = String::from("width,residual,predicted\n");
            for r in &rows {
                let _ = writeln!(out, "{},{:.15e},{:.15e}", r.width, r.residual, r.predicted);
            }
            Ok(Report::csv(out))
        }
    }
}

fn operator_check(a: &OperatorCheckArgs, acc: &EvalAccuracy) -> Result<Report, Failure> {
    finite("c", a.c)?;
    require(a.c >= 0.0 && a.c != 1.0, "--c must be ≥ 0 and different from 1")?;
    require((4..=14).contains(&a.step_log2), "--step-log2 must lie in 4..=14")?;
    require(a.grid_min <= -1.5 && a.grid_max >= 3.0, "grid must contain [-1.5, 3]")?;
    require(a.grid_max - a.grid_min <= 24.0, "grid span above 24 is outside the supported range")?;
    require(a.prime_cap >= 2, "--prime-cap must be at least 2")?;
    let h = 2f64.powi(-(a.step_log2 as i32));
    let grid = Grid::new(a.grid_min, a.grid_max, h, 1.0)?;
    let f = GridFunction::from_real(grid, a.c, bump(0.0, 0.5))?;

    let mut shift_err: f64 = 0.0;
    for t in [0.5, 1.0, 2.0] {
        let g = shift_group(&f, t)?;
        shift_err = shift_err.max((weighted_norm(&g) / weighted_norm(&f) / (-a.c * t).exp() - 1.0).abs());
    }

    let k = GridFunction::from_fn(grid, a.c, |t| Complex64::new(bump(-1.0, 2.0)(t), (2.0 * t).cos() * bump(-1.0, 2.0)(t)))?;
    let lhs = weighted_inner(&infinitesimal_shift(&f)?, &k)?;
    let rhs = weighted_inner(&f, &adjoint_infinitesimal_shift(&k)?)?;
    let adjoint = (lhs - rhs).norm() / (weighted_norm(&f) * weighted_norm(&k));

    let direct = apply_spectral_operator_direct(&f, ShiftRule::LatticeAligned)?;
    let back = apply_mobius_inverse(&direct.result, ShiftRule::LatticeAligned)?;
    let mobius = back.result.max_abs_diff(&f)?;
    let euler = compose_euler_product(&f, a.prime_cap, ShiftRule::LatticeAligned)?;
    let euler_rel = weighted_norm(&direct.result.sub(&euler.result)?) / weighted_norm(&direct.result);

    let interp = apply_spectral_operator_direct(&f, ShiftRule::Interpolate)?;
    let fourier = apply_functional_calculus(Symbol::Zeta, &f, acc)?;
    let two_path = weighted_norm(&interp.result.sub(&fourier)?) / weighted_norm(&interp.result);

    Ok(Report::json(json!({
        "c": a.c,
        "step": h,
        "shift_scaling_error": shift_err,
        "adjoint_residual": adjoint,
        "adjoint_residual_over_h2": adjoint / (h * h),
        "mobius_round_trip": mobius,
        "euler_product_residual": euler_rel,
        "two_path_relative": two_path,
        "shift_terms": direct.terms,
        "formal": direct.formal,
    }))
    .disclose("grid", format!("[{}, {}] step 2^-{}", a.grid_min, a.grid_max, a.step_log2))
    .disclose("input", "bump on [0, 0.5]")
    .disclose("prime_cap", a.prime_cap))
}
