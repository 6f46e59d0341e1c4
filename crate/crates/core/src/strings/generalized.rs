//! Generalized strings: weighted point masses on (0, ∞).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta::{primes_up_to, zeta, zeta_derivative, EvalAccuracy};

/// Rule that generated the atoms, used to pick a closed-form zeta function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    /// δ at every positive integer.
    Harmonic,
    /// δ at p^k, k ≥ 0.
    PrimeHarmonic(u64),
    /// weight log p at every prime power p^m.
    Prime,
    /// finite list of atoms.
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedString {
    atoms: Vec<(f64, f64)>,
    generator: Generator,
    /// atoms are complete below this location
    cap: f64,
}

impl GeneralizedString {
    pub(crate) fn from_sorted_atoms(atoms: Vec<(f64, f64)>, generator: Generator) -> Self {
        Self { atoms, generator, cap: f64::INFINITY }
    }

    /// Finite measure from (location, weight) pairs; coincident locations merge.
    pub fn new(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidString("no atoms".into()));
        }
        if atoms.iter().any(|&(x, w)| !(x > 0.0) || !x.is_finite() || !w.is_finite()) {
            return Err(Error::InvalidString("atoms need finite positive locations and finite weights".into()));
        }
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 += w,
                _ => merged.push((x, w)),
            }
        }
        Ok(Self::from_sorted_atoms(merged, Generator::Custom))
    }

    pub fn harmonic(cap: u64) -> Self {
        let atoms = (1..=cap).map(|k| (k as f64, 1.0)).collect();
        Self { atoms, generator: Generator::Harmonic, cap: cap as f64 }
    }

    pub fn prime_harmonic(p: u64, cap: u64) -> Result<Self> {
        if primes_up_to(p).last() != Some(&p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        let mut atoms = Vec::new();
        let mut q = 1u64;
        while q <= cap {
            atoms.push((q as f64, 1.0));
            q = match q.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
        Ok(Self { atoms, generator: Generator::PrimeHarmonic(p), cap: cap as f64 })
    }

    /// The prime string: weight log p at p^m ≤ cap.
    pub fn prime(cap: u64) -> Self {
        let mut atoms = Vec::new();
        for p in primes_up_to(cap) {
            let lp = (p as f64).ln();
            let mut q = p;
            loop {
                atoms.push((q as f64, lp));
                q = match q.checked_mul(p) {
                    Some(v) if v <= cap => v,
                    _ => break,
                };
            }
        }
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        Self { atoms, generator: Generator::Prime, cap: cap as f64 }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    /// N_η(x) = ½(η(0,x] + η(0,x)).
    pub fn counting(&self, x: f64) -> Result<f64> {
        if x > self.cap {
            return Err(Error::DepthCapExceeded { depth: self.atoms.len(), needed: x });
        }
        let below = self.atoms.partition_point(|a| a.0 < x);
        let mut n: f64 = self.atoms[..below].iter().map(|a| a.1).sum();
        if let Some(&(loc, w)) = self.atoms.get(below) {
            if loc == x {
                n += 0.5 * w;
            }
        }
        Ok(n)
    }

    /// ζ_η(s) = ∫ x^{-s} η(dx), in closed form for the generated strings.
    pub fn geometric_zeta(&self, s: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
        match self.generator {
            Generator::Harmonic => zeta(s, acc),
            Generator::PrimeHarmonic(p) => {
                let d = 1.0 - (-s * (p as f64).ln()).exp();
                if d.norm() < 1e-14 {
                    return Err(Error::PoleHit);
                }
                Ok(d.inv())
            }
            Generator::Prime => {
                let z = zeta(s, acc)?;
                if z.norm() < 1e-300 {
                    return Err(Error::PoleHit);
                }
                Ok(-zeta_derivative(s, acc)? / z)
            }
            Generator::Custom => Ok(self
                .atoms
                .iter()
                .map(|&(x, w)| (-s * x.ln()).exp() * w)
                .sum()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_counting() {
        let h = GeneralizedString::harmonic(100);
        assert_eq!(h.counting(10.5).unwrap(), 10.0);
        assert_eq!(h.counting(10.0).unwrap(), 9.5);
        assert!(h.counting(101.0).is_err());
    }

    #[test]
    fn half_jump_convention() {
        let g = GeneralizedString::new(vec![(2.0, 3.0), (5.0, 1.5)]).unwrap();
        let below = g.counting(2.0 - 1e-12).unwrap();
        assert_eq!(g.counting(2.0).unwrap(), below + 1.5);
        assert_eq!(g.counting(6.0).unwrap(), 4.5);
    }

    #[test]
    fn prime_string_zeta_matches_direct_sum() {
        let acc = EvalAccuracy::default();
        let eta = GeneralizedString::prime(1_000_000);
        let s = Complex64::new(2.0, 0.0);
        let closed = eta.geometric_zeta(s, &acc).unwrap();
        let direct: f64 = eta.atoms().iter().map(|&(x, w)| w / (x * x)).sum();
        // tail Σ_{n>10^6} Λ(n)/n² ≈ 1e-6
        assert!((closed.re - direct).abs() < 3e-6, "{closed} vs {direct}");
        assert!((closed.re - 0.569_961).abs() < 1e-6);
    }

    #[test]
    fn prime_harmonic_has_unit_atom() {
        let h2 = GeneralizedString::prime_harmonic(2, 20).unwrap();
        let locs: Vec<f64> = h2.atoms().iter().map(|a| a.0).collect();
        assert_eq!(locs, vec![1.0, 2.0, 4.0, 8.0, 16.0]);
        assert!(GeneralizedString::prime_harmonic(4, 20).is_err());
    }
}
