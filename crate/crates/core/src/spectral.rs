//! The frequency side of a fractal string.
//!
//! Frequencies are normalized, f = k / l_j for k ≥ 1, so the Weyl term is
//! W(x) = (total length)·x.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::dimensions::geometric_zeta;
use crate::error::{Error, Result};
use crate::strings::{
    estimate_minkowski, lapidus_maier_string, lapidus_maier_target, log_grid,
    power_law_string_infinite, FractalString,
};
use crate::zeta::{zeta, EvalAccuracy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralMethod {
    DirectEnumeration,
    HarmonicConvolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralCount {
    pub x: f64,
    pub count: f64,
    pub method: SpectralMethod,
}

fn half_step(lhs: f64, x: f64) -> f64 {
    if lhs < x {
        1.0
    } else if lhs == x {
        0.5
    } else {
        0.0
    }
}

fn check_x(string: &FractalString, x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("x must be positive, got {x}")));
    }
    string.check_materialized(x)
}

/// Pairs (k, j) with k/l_j ≤ x, enumerated one by one (half weight at equality).
pub fn spectral_count_direct(string: &FractalString, x: f64) -> Result<f64> {
    check_x(string, x)?;
    let mut n = 0.0;
    for lv in string.level_iter() {
        if lv.reciprocal > x {
            break;
        }
        let mut k = 1.0;
        loop {
            let h = half_step(k * lv.reciprocal, x);
            if h == 0.0 {
                break;
            }
            n += h * lv.weight;
            k += 1.0;
        }
    }
    Ok(n)
}

/// Σ_{n ≥ 1} N_L(x/n), with the comparison written as n·r_j against x.
pub fn spectral_count_convolution(string: &FractalString, x: f64) -> Result<f64> {
    check_x(string, x)?;
    let levels = string.levels();
    let r1 = levels[0].reciprocal;
    let mut total = 0.0;
    let mut n = 1.0;
    while n * r1 <= x {
        for lv in &levels {
            let h = half_step(n * lv.reciprocal, x);
            if h == 0.0 {
                break;
            }
            total += h * lv.weight;
        }
        n += 1.0;
    }
    Ok(total)
}

/// Σ_j w_j ⌊x·l_j⌋, halving the top frequency when x·l_j is an integer.
pub fn spectral_count_floor(string: &FractalString, x: f64) -> Result<f64> {
    check_x(string, x)?;
    let mut n = 0.0;
    for lv in string.level_iter() {
        if lv.reciprocal > x {
            break;
        }
        let q = x / lv.reciprocal;
        let f = q.floor();
        n += lv.weight * if f == q { f - 0.5 } else { f };
    }
    Ok(n)
}

/// N_ν(x) by direct enumeration and by harmonic convolution.
pub fn spectral_counting(string: &FractalString, x: f64) -> Result<[SpectralCount; 2]> {
    Ok([
        SpectralCount { x, count: spectral_count_direct(string, x)?, method: SpectralMethod::DirectEnumeration },
        SpectralCount {
            x,
            count: spectral_count_convolution(string, x)?,
            method: SpectralMethod::HarmonicConvolution,
        },
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralZeta {
    /// ζ_L(s)·ζ(s)
    pub product: Complex64,
    /// Σ f^{-s} over frequencies f ≤ cutoff
    pub direct: Complex64,
    /// bound on |product − direct| from all truncations
    pub tail_bound: f64,
    pub cutoff: f64,
}

/// ζ_ν(s) both as the product ζ_L(s)ζ(s) and as the Dirichlet series over
/// frequencies up to `cutoff`. Needs Re s > 1.
pub fn spectral_zeta(
    string: &FractalString,
    s: Complex64,
    cutoff: f64,
    acc: &EvalAccuracy,
) -> Result<SpectralZeta> {
    let sigma = s.re;
    if !(sigma > 1.0) {
        return Err(Error::AbscissaViolation { re_s: sigma, abscissa: 1.0 });
    }
    let z = zeta(s, acc)?;
    let gz = geometric_zeta(string, s)?;
    let product = gz.value * z;
    let f_max = cutoff.min(string.materialized_up_to());
    let levels: Vec<_> = string.level_iter().take_while(|lv| lv.reciprocal <= f_max).collect();
    let direct: Complex64 = levels
        .par_iter()
        .map(|lv| {
            let mut acc_s = Complex64::new(0.0, 0.0);
            let kmax = (f_max / lv.reciprocal).floor() as u64;
            for k in (1..=kmax).rev() {
                acc_s += (-s * (k as f64 * lv.reciprocal).ln()).exp();
            }
            acc_s * lv.weight
        })
        .collect::<Vec<_>>()
        .iter()
        .sum();
    let total = string.total_length();
    let sigma_z = zeta(Complex64::new(sigma, 0.0), acc)?.re;
    // frequencies above f_max of materialized levels: σ·total·F^{1-σ}/(σ-1)
    let freq_tail = sigma * total * f_max.powf(1.0 - sigma) / (sigma - 1.0);
    // unmaterialized lengths contribute at most ζ(σ)·T·l_J^{σ-1} to the direct side
    let unmat = string.truncation_bound();
    let last_len = 1.0 / string.materialized_up_to();
    let missing = if unmat > 0.0 { sigma_z * unmat * last_len.min(1.0).powf(sigma - 1.0) } else { 0.0 };
    let tail_bound = freq_tail + missing + gz.tail_bound * z.norm() + 10.0 * acc.abs_tol;
    Ok(SpectralZeta { product, direct, tail_bound, cutoff: f_max })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylRemainder {
    pub x: f64,
    pub weyl: f64,
    pub count: f64,
    pub remainder: f64,
}

/// W(x) − N_ν(x) along a grid, with W(x) = total length · x.
pub fn weyl_remainder_profile(string: &FractalString, xs: &[f64]) -> Result<Vec<WeylRemainder>> {
    let total = string.total_length();
    xs.par_iter()
        .map(|&x| {
            let count = spectral_count_floor(string, x)?;
            let weyl = total * x;
            Ok(WeylRemainder { x, weyl, count, remainder: weyl - count })
        })
        .collect()
}

pub fn remainder_to_csv(rows: &[WeylRemainder]) -> String {
    let mut out = String::from("x,weyl,count,remainder\n");
    for r in rows {
        let _ = writeln!(out, "{:.12e},{:.15e},{},{:.12e}", r.x, r.weyl, r.count, r.remainder);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LapoReport {
    pub d: f64,
    pub x_probe: f64,
    pub minkowski_content: f64,
    pub zeta_at_d: f64,
    pub c_d_predicted: f64,
    pub c_d_measured: f64,
    pub rel_error: f64,
    pub lengths_used: usize,
}

/// Compare the coefficient of x^D in W(x) − N_ν(x) for l_j = j^{-1/D} with
/// 2^{-(1-D)}(1-D)(-ζ(D))·M, where the Minkowski content M is estimated
/// from tube volumes on ε ∈ [1e-10, 1e-6].
pub fn lapo_coefficient_check(d: f64, x_probe: f64, acc: &EvalAccuracy) -> Result<LapoReport> {
    if !(d > 0.0 && d < 1.0) {
        return Err(Error::InvalidParameter(format!("D must lie in (0,1), got {d}")));
    }
    if !(x_probe >= 100.0) {
        return Err(Error::InvalidParameter(format!("x_probe must be ≥ 100, got {x_probe}")));
    }
    let (eps_hi, eps_lo) = (1e-6f64, 1e-10f64);
    let need_tube = (1.0 / (2.0 * eps_lo)).powf(d);
    let need_count = x_probe.powf(d);
    let count = (need_tube.max(need_count) * 1.05).ceil() as usize + 2;
    let string = power_law_string_infinite(d, 1.0, count)?;
    let est = estimate_minkowski(&string, d, &log_grid(eps_hi, eps_lo, 60))?;
    let m = 0.5 * (est.upper_content + est.lower_content);
    let zd = zeta(Complex64::new(d, 0.0), acc)?.re;
    let predicted = 2f64.powf(-(1.0 - d)) * (1.0 - d) * (-zd) * m;
    let xs = log_grid(x_probe, x_probe / 10.0, 200);
    let rows = weyl_remainder_profile(&string, &xs)?;
    let measured = rows.iter().map(|r| r.remainder / r.x.powf(d)).sum::<f64>() / rows.len() as f64;
    Ok(LapoReport {
        d,
        x_probe,
        minkowski_content: m,
        zeta_at_d: zd,
        c_d_predicted: predicted,
        c_d_measured: measured,
        rel_error: (measured - predicted).abs() / predicted.abs(),
        lengths_used: count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InverseProblemReport {
    pub d: f64,
    pub tau: f64,
    pub beta: f64,
    /// amplitude of cos/sin(τ log x) in (N_L(x) − x^D)/x^D
    pub geometric_amplitude: f64,
    /// amplitude of cos/sin(τ log x) in (W(x) − N_ν(x))/x^D
    pub spectral_amplitude: f64,
    pub amplitude_ratio: f64,
    /// |ζ(D + iτ)|, the factor the spectral side should carry
    pub zeta_modulus: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub samples: usize,
    pub lengths_used: usize,
}

/// Least-squares fit y ≈ c + A cos(τ log x) + B sin(τ log x); returns √(A²+B²).
fn harmonic_amplitude(xs: &[f64], ys: &[f64], tau: f64) -> f64 {
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let ph = tau * x.ln();
        let row = [1.0, ph.cos(), ph.sin()];
        for i in 0..3 {
            aty[i] += row[i] * y;
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let sol = solve3(ata, aty);
    sol[1].hypot(sol[2])
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let s: f64 = (i + 1..3).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Geometric vs spectral oscillation amplitudes on the Lapidus–Maier string.
pub fn inverse_problem_experiment(d: f64, tau: f64, beta: f64, acc: &EvalAccuracy) -> Result<InverseProblemReport> {
    let x_max = 1e8;
    let x_min = 1e3;
    let samples = 2000;
    let count = lapidus_maier_target(d, tau, beta, x_max).floor() as usize;
    let string = lapidus_maier_string(d, tau, beta, count)?;
    let xs = log_grid(x_max / 2.0, x_min, samples);
    let geo: Vec<f64> = xs
        .iter()
        .map(|&x| Ok((string.geometric_counting(x)? - x.powf(d)) / x.powf(d)))
        .collect::<Result<_>>()?;
    let spec: Vec<f64> = weyl_remainder_profile(&string, &xs)?
        .iter()
        .map(|r| r.remainder / r.x.powf(d))
        .collect();
    let g = harmonic_amplitude(&xs, &geo, tau);
    let s = harmonic_amplitude(&xs, &spec, tau);
    let zm = zeta(Complex64::new(d, tau), acc)?.norm();
    Ok(InverseProblemReport {
        d,
        tau,
        beta,
        geometric_amplitude: g,
        spectral_amplitude: s,
        amplitude_ratio: if g > 0.0 { s / g } else { f64::NAN },
        zeta_modulus: zm,
        x_min,
        x_max: x_max / 2.0,
        samples,
        lengths_used: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::cantor_string;

    #[test]
    fn two_interval_string() {
        let s = FractalString::explicit(vec![(1.0, 1), (0.5, 1)], None).unwrap();
        let [a, b] = spectral_counting(&s, 4.5).unwrap();
        assert_eq!((a.count, b.count), (6.0, 6.0));
        assert_eq!(spectral_count_floor(&s, 4.5).unwrap(), 6.0);
    }

    #[test]
    fn cantor_at_thirty() {
        let cs = cantor_string();
        let [a, b] = spectral_counting(&cs, 30.0).unwrap();
        assert_eq!(a.count, 19.5);
        assert_eq!(b.count, 19.5);
        assert_eq!(spectral_count_floor(&cs, 30.0).unwrap(), 19.5);
        assert_eq!(spectral_count_direct(&cs, 2.9).unwrap(), 0.0);
    }

    #[test]
    fn jump_points_agree() {
        let cs = cantor_string();
        for x in [3.0, 9.0, 18.0, 27.0, 81.0] {
            let a = spectral_count_direct(&cs, x).unwrap();
            let b = spectral_count_convolution(&cs, x).unwrap();
            let c = spectral_count_floor(&cs, x).unwrap();
            assert_eq!((a, b), (c, c), "x={x}");
        }
    }

    #[test]
    fn unit_interval_reduces_to_zeta() {
        let one = FractalString::single(1.0).unwrap();
        let acc = EvalAccuracy::default();
        let s = Complex64::new(2.5, 1.0);
        let z = spectral_zeta(&one, s, 1e5, &acc).unwrap();
        assert!((z.product - zeta(s, &acc).unwrap()).norm() < 1e-14);
        assert!((z.product - z.direct).norm() <= z.tail_bound);
        for r in weyl_remainder_profile(&one, &[0.5, 1.5, 7.25, 100.75]).unwrap() {
            assert!(r.remainder >= 0.0 && r.remainder < 1.0);
        }
    }

    #[test]
    fn cantor_spectral_zeta_at_two() {
        let acc = EvalAccuracy::default();
        let z = spectral_zeta(&cantor_string(), Complex64::new(2.0, 0.0), 1e6, &acc).unwrap();
        let expect = std::f64::consts::PI.powi(2) / 42.0;
        assert!((z.product.re - expect).abs() < 1e-14);
        assert!((z.product - z.direct).norm() <= z.tail_bound);
    }

    #[test]
    fn harmonic_fit_recovers_amplitude() {
        let xs = log_grid(1e6, 1e2, 500);
        let ys: Vec<f64> = xs.iter().map(|x| 0.3 + 0.02 * (5.0 * x.ln() + 0.4).cos()).collect();
        assert!((harmonic_amplitude(&xs, &ys, 5.0) - 0.02).abs() < 1e-12);
    }
}
