//! Named strings: Cantor, power laws, and the Lapidus–Maier string.

use num_complex::Complex64;

use super::{FractalString, CANTOR_DEPTH};
use crate::error::{Error, Result};
use crate::zeta::{zeta_tail, EvalAccuracy};

/// Lengths 3^{-(j+1)} with multiplicity 2^j, tail below 1e-12.
pub fn cantor_string() -> FractalString {
    FractalString::lattice(3.0, 2.0, CANTOR_DEPTH).expect("Cantor parameters are valid")
}

fn check_dimension(d: f64) -> Result<()> {
    if !(d > 0.0 && d < 1.0) {
        return Err(Error::InvalidParameter(format!("dimension must lie in (0,1), got {d}")));
    }
    Ok(())
}

/// Finite string l_j = L·j^{-1/D}, j = 1..=J.
pub fn power_law_string(d: f64, scale: f64, count: usize) -> Result<FractalString> {
    check_dimension(d)?;
    if !(scale > 0.0) || count == 0 {
        return Err(Error::InvalidParameter("power-law string needs L > 0 and J ≥ 1".into()));
    }
    let lengths = (1..=count).map(|j| (scale * (j as f64).powf(-1.0 / d), 1)).collect();
    FractalString::explicit(lengths, None)
}

/// The infinite power-law string: the first J lengths plus the exact tail
/// L·Σ_{j>J} j^{-1/D}.
pub fn power_law_string_infinite(d: f64, scale: f64, count: usize) -> Result<FractalString> {
    let finite = power_law_string(d, scale, count)?;
    let acc = EvalAccuracy::new(1e-14, 10_000_000)?;
    let tail = scale * zeta_tail(Complex64::new(1.0 / d, 0.0), count as u64 + 1, &acc)?.re;
    match finite.representation {
        super::Representation::Explicit { lengths, .. } => FractalString::explicit(lengths, Some(tail)),
        _ => unreachable!(),
    }
}

/// Largest β keeping x^D(1 + 2β cos(τ log x)) nondecreasing.
pub fn lapidus_maier_guard(d: f64, tau: f64) -> f64 {
    d / (2.0 * (d * d + tau * tau).sqrt())
}

/// x^D (1 + 2β cos(τ log x)).
pub fn lapidus_maier_target(d: f64, tau: f64, beta: f64, x: f64) -> f64 {
    x.powf(d) * (1.0 + 2.0 * beta * (tau * x.ln()).cos())
}

/// String whose counting function is ⌊x^D(1 + 2β cos(τ log x))⌋: the j-th
/// reciprocal length is where the target first reaches j. The tail beyond
/// J comes from integrating the smooth target.
pub fn lapidus_maier_string(d: f64, tau: f64, beta: f64, count: usize) -> Result<FractalString> {
    check_dimension(d)?;
    if !(tau > 0.0) || !(beta >= 0.0) || count == 0 {
        return Err(Error::InvalidParameter("need τ > 0, β ≥ 0 and J ≥ 1".into()));
    }
    let guard = lapidus_maier_guard(d, tau);
    if beta > guard {
        return Err(Error::NonMonotoneTarget { beta, guard });
    }
    let g = |x: f64| lapidus_maier_target(d, tau, beta, x);
    let mut reciprocals = Vec::with_capacity(count);
    for j in 1..=count {
        let jf = j as f64;
        let mut lo = (jf / (1.0 + 2.0 * beta)).powf(1.0 / d) * (1.0 - 1e-9);
        let mut hi = (jf / (1.0 - 2.0 * beta)).powf(1.0 / d) * (1.0 + 1e-9);
        while hi - lo > 1e-12 * hi {
            let mid = 0.5 * (lo + hi);
            if g(mid) >= jf {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        reciprocals.push(hi);
    }
    let x_last = *reciprocals.last().unwrap();
    let omega = Complex64::new(d, tau);
    let smooth = d * x_last.powf(d - 1.0) / (1.0 - d);
    let osc = beta * omega * (omega - 1.0).expf(x_last) / (1.0 - omega);
    let tail = (smooth + 2.0 * osc.re - 0.5 / x_last).max(0.0);
    let lengths = reciprocals.iter().map(|&x| (1.0 / x, 1)).collect();
    FractalString::explicit(lengths, Some(tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_law_lengths() {
        let s = power_law_string(0.5, 1.0, 3).unwrap();
        let ls: Vec<f64> = s.levels().iter().map(|l| l.length).collect();
        assert_eq!(ls, vec![1.0, 0.25, 1.0 / 9.0]);
    }

    #[test]
    fn infinite_power_law_total_is_zeta() {
        // ζ(5/3) = 2.2838891...; checked against direct partial sum + integral tail
        let s = power_law_string_infinite(0.6, 1.0, 1000).unwrap();
        let n = 2_000_000u64;
        let partial: f64 = (1..=n).map(|j| (j as f64).powf(-5.0 / 3.0)).sum();
        let oracle = partial + 1.5 * (n as f64 + 0.5).powf(-2.0 / 3.0);
        assert!((s.total_length() - oracle).abs() < 1e-9, "{} vs {oracle}", s.total_length());
    }

    #[test]
    fn lapidus_maier_recount_matches_target_floor() {
        let s = lapidus_maier_string(0.5, 10.0, 0.01, 100).unwrap();
        let last = s.materialized_up_to();
        let mut x = 0.7;
        while x < last {
            let n = s.geometric_counting(x).unwrap();
            let target = lapidus_maier_target(0.5, 10.0, 0.01, x);
            assert!((n - target).abs() <= 1.0, "x={x}: {n} vs {target}");
            assert_eq!(n, target.floor(), "x={x}");
            x *= 1.0137;
        }
    }

    #[test]
    fn lapidus_maier_zero_beta_is_power_law() {
        let lm = lapidus_maier_string(0.5, 10.0, 0.0, 50).unwrap();
        let pl = power_law_string(0.5, 1.0, 50).unwrap();
        for (a, b) in lm.levels().iter().zip(pl.levels()) {
            assert!((a.length - b.length).abs() < 1e-11 * b.length);
        }
    }

    #[test]
    fn lapidus_maier_guard_rejects_large_beta() {
        assert!(matches!(
            lapidus_maier_string(0.5, 10.0, 0.3, 10),
            Err(Error::NonMonotoneTarget { .. })
        ));
    }

    #[test]
    fn lapidus_maier_tail_is_close_to_brute_sum() {
        let short = lapidus_maier_string(0.5, 10.0, 0.01, 2000).unwrap();
        let long = lapidus_maier_string(0.5, 10.0, 0.01, 200_000).unwrap();
        let rel = (short.total_length() - long.total_length()).abs() / long.total_length();
        assert!(rel < 1e-4, "{rel}");
    }
}
