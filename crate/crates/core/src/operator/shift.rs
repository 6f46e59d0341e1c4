//! The infinitesimal shift ∂ = d/dt, the translation group e^{-t∂}, and the
//! shift-sum operators built from translations by log n.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::GridFunction;
use crate::error::{Error, Result};
use crate::zeta::{mobius_table, primes_up_to, smallest_prime_factors};

/// Largest number of translates a shift sum may need before it is refused.
pub const MAX_SHIFT_TERMS: usize = 20_000_000;

/// How a translation by a non-grid amount is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum ShiftRule {
    /// linear interpolation between the two neighbouring grid points,
    /// snapping when within 1e-9·h of a grid point
    #[default]
    Interpolate,
    /// shift log n by k(n)·h with k completely additive,
    /// k(p) = round(log p / h)
    LatticeAligned,
}

/// f′ by fourth-order central differences; the two outermost samples at each
/// end are set to zero.
pub fn infinitesimal_shift(f: &GridFunction) -> Result<GridFunction> {
    f.require_inside_guard()?;
    let n = f.samples.len();
    let s = &f.samples;
    let inv = 1.0 / (12.0 * f.grid.h);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 2..n.saturating_sub(2) {
        out[i] = (s[i - 2] - s[i - 1] * 8.0 + s[i + 1] * 8.0 - s[i + 2]) * inv;
    }
    Ok(f.with_samples(out))
}

/// The adjoint ∂* = 2c − ∂ in H_c.
pub fn adjoint_infinitesimal_shift(f: &GridFunction) -> Result<GridFunction> {
    let d = infinitesimal_shift(f)?;
    f.scale(Complex64::new(2.0 * f.c, 0.0)).sub(&d)
}

fn split_shift(steps: f64) -> (i64, f64) {
    let r = steps.round();
    if (steps - r).abs() < 1e-9 {
        (r as i64, 0.0)
    } else {
        let k = steps.floor();
        (k as i64, steps - k)
    }
}

/// (e^{-t∂} f)(u) = f(u − t).
pub fn shift_group(f: &GridFunction, t: f64) -> Result<GridFunction> {
    let n = f.samples.len() as i64;
    let (k, theta) = split_shift(t / f.grid.h);
    if let Some((a, b)) = f.support_indices() {
        let lo = a as i64 + k;
        let hi = b as i64 + k + if theta > 0.0 { 1 } else { 0 };
        if lo < 0 || hi >= n {
            return Err(Error::ShiftOutOfRange { shift: t });
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n as usize];
    for (j, slot) in out.iter_mut().enumerate() {
        let i = j as i64 - k;
        let at = |i: i64| if (0..n).contains(&i) { f.samples[i as usize] } else { Complex64::new(0.0, 0.0) };
        *slot = if theta == 0.0 { at(i) } else { at(i) * (1.0 - theta) + at(i - 1) * theta };
    }
    Ok(f.with_samples(out))
}

/// Result of a shift-sum operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftSum {
    pub result: GridFunction,
    /// number of translates that reach the grid
    pub terms: usize,
    /// true for c ≤ 1, where the sum is only defined on compactly supported inputs
    pub formal: bool,
}

/// Sparse kernel K with (K ⋆ f)[j] = Σ_k K[k] f[j − k].
struct Kernel {
    weights: Vec<f64>,
    terms: usize,
}

impl Kernel {
    fn new(len: usize) -> Self {
        Self { weights: vec![0.0; len], terms: 0 }
    }

    fn deposit(&mut self, steps: f64, w: f64) {
        let (k, theta) = split_shift(steps);
        let len = self.weights.len() as i64;
        if k < len {
            self.weights[k as usize] += w * (1.0 - theta);
            self.terms += 1;
        }
        if theta > 0.0 && k + 1 < len {
            self.weights[k as usize + 1] += w * theta;
        }
    }

    fn apply(&self, f: &GridFunction) -> GridFunction {
        let n = f.samples.len();
        let Some((a, b)) = f.support_indices() else {
            return f.zeros_like();
        };
        let nz: Vec<(usize, f64)> =
            self.weights.iter().enumerate().filter(|(_, w)| **w != 0.0).map(|(k, w)| (k, *w)).collect();
        let out: Vec<Complex64> = (0..n)
            .into_par_iter()
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                if j < a {
                    return acc;
                }
                // k ranges over [j - b, j - a]
                let k_lo = j.saturating_sub(b);
                let k_hi = j - a;
                let start = nz.partition_point(|&(k, _)| k < k_lo);
                for &(k, w) in &nz[start..] {
                    if k > k_hi {
                        break;
                    }
                    acc += f.samples[j - k] * w;
                }
                acc
            })
            .collect();
        f.with_samples(out)
    }
}

/// Largest n whose translate by log n can still reach the grid.
fn reach(f: &GridFunction) -> Result<(usize, usize)> {
    if !f.clear_of_left_guard() {
        return Err(Error::SupportUnbounded);
    }
    let n = f.samples.len();
    let a = f.support_indices().map_or(n - 1, |(a, _)| a);
    let span = (n - 1 - a) as f64 * f.grid.h;
    let n_max = span.exp().floor() + 1.0;
    if n_max > MAX_SHIFT_TERMS as f64 {
        return Err(Error::InvalidParameter(format!(
            "shift sum needs about {n_max:e} translates; shorten the grid to the right of the support"
        )));
    }
    Ok((n_max as usize, n))
}

/// k(n) for 1 ≤ n ≤ n_max under the lattice rule, completely additive.
fn lattice_steps(n_max: usize, h: f64) -> Vec<i64> {
    let spf = smallest_prime_factors(n_max);
    let mut k = vec![0i64; n_max + 1];
    for m in 2..=n_max {
        let p = spf[m] as usize;
        let kp = ((p as f64).ln() / h).round() as i64;
        k[m] = k[m / p] + kp;
    }
    k
}

/// Builds the kernel Σ_n w(n) δ_{log n} for n ≤ n_max under `rule`.
fn build_kernel<W: Fn(usize) -> f64>(n_max: usize, len: usize, h: f64, rule: ShiftRule, w: W) -> Kernel {
    let mut ker = Kernel::new(len);
    match rule {
        ShiftRule::Interpolate => {
            for n in 1..=n_max {
                let wn = w(n);
                if wn != 0.0 {
                    ker.deposit((n as f64).ln() / h, wn);
                }
            }
        }
        ShiftRule::LatticeAligned => {
            // rounding can pull k(n) below log n / h by up to Ω(n)/2 steps
            let slack = (0.5 * h * (n_max as f64).log2()).exp();
            let hi = ((n_max as f64) * slack).ceil() as usize + 1;
            let steps = lattice_steps(hi, h);
            for n in 1..=hi {
                let wn = w(n);
                if wn != 0.0 {
                    ker.deposit(steps[n] as f64, wn);
                }
            }
        }
    }
    ker
}

fn finish(f: &GridFunction, ker: Kernel) -> ShiftSum {
    ShiftSum { result: ker.apply(f), terms: ker.terms, formal: f.c <= 1.0 }
}

/// a(f)(t) = Σ_{n ≥ 1} f(t − log n).
pub fn apply_spectral_operator_direct(f: &GridFunction, rule: ShiftRule) -> Result<ShiftSum> {
    let (n_max, len) = reach(f)?;
    Ok(finish(f, build_kernel(n_max, len, f.grid.h, rule, |_| 1.0)))
}

/// a⁻¹(f)(t) = Σ_{n ≥ 1} μ(n) f(t − log n).
pub fn apply_mobius_inverse(f: &GridFunction, rule: ShiftRule) -> Result<ShiftSum> {
    let (n_max, len) = reach(f)?;
    let slack = (0.5 * f.grid.h * (n_max as f64).log2()).exp();
    let mu = mobius_table(((n_max as f64) * slack).ceil() as usize + 1);
    Ok(finish(f, build_kernel(n_max, len, f.grid.h, rule, |n| mu[n] as f64)))
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || primes_up_to(p).last() != Some(&p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    Ok(())
}

/// a_p(f)(t) = Σ_{m ≥ 0} f(t − m log p).
pub fn apply_euler_factor(f: &GridFunction, p: u64, rule: ShiftRule) -> Result<ShiftSum> {
    check_prime(p)?;
    let (_, len) = reach(f)?;
    let h = f.grid.h;
    let mut ker = Kernel::new(len);
    let step = match rule {
        ShiftRule::Interpolate => (p as f64).ln() / h,
        ShiftRule::LatticeAligned => ((p as f64).ln() / h).round(),
    };
    let mut m = 0.0;
    while m * step < len as f64 {
        ker.deposit(m * step, 1.0);
        m += 1.0;
    }
    Ok(finish(f, ker))
}

/// Π_{p ≤ P} a_p applied in increasing order of p.
pub fn compose_euler_product(f: &GridFunction, prime_cap: u64, rule: ShiftRule) -> Result<ShiftSum> {
    let mut g = f.clone();
    let mut terms = 1usize;
    for p in primes_up_to(prime_cap) {
        let step = apply_euler_factor(&g, p, rule)?;
        terms = terms.saturating_mul(step.terms);
        g = step.result;
    }
    Ok(ShiftSum { result: g, terms, formal: f.c <= 1.0 })
}
