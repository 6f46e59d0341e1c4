//! Ordinary and generalized fractal strings.
//!
//! An ordinary string is a sequence of lengths with multiplicities, stored
//! either explicitly or as a lattice rule (lengths b^{-(j+1)} with
//! multiplicity m^j). Counting functions use the half-weight convention at
//! jumps: an atom exactly at x contributes half its weight.

mod generalized;
mod minkowski;
mod special;

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use generalized::{GeneralizedString, Generator};
pub use minkowski::{estimate_minkowski, log_grid, MinkowskiEstimate};
pub use special::{
    cantor_string, lapidus_maier_guard, lapidus_maier_string, lapidus_maier_target,
    power_law_string, power_law_string_infinite,
};

/// Depth that makes the Cantor tail (2/3)^{J+1} fall below 1e-12.
pub const CANTOR_DEPTH: usize = 68;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Representation {
    /// Distinct lengths, descending, with multiplicities. `tail` is the total
    /// length of further (unlisted) intervals, all shorter than the last one.
    Explicit { lengths: Vec<(f64, u64)>, tail: Option<f64> },
    /// Lengths b^{-(j+1)} with multiplicity m^j, materialized for j ≤ depth.
    Lattice { base: f64, ratio: f64, depth: usize },
}

/// One distinct length with its reciprocal and multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub length: f64,
    pub reciprocal: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractalString {
    pub representation: Representation,
}

fn lattice_level(b: f64, m: f64, j: usize) -> Level {
    let reciprocal = b.powi(j as i32 + 1);
    Level { length: 1.0 / reciprocal, reciprocal, weight: m.powi(j as i32) }
}

impl FractalString {
    /// Explicit string; lengths are sorted descending and equal lengths merged.
    pub fn explicit(lengths: Vec<(f64, u64)>, tail: Option<f64>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidString("no lengths".into()));
        }
        for &(l, w) in &lengths {
            if !(l > 0.0) || !l.is_finite() {
                return Err(Error::InvalidString(format!("length {l} is not positive")));
            }
            if w == 0 {
                return Err(Error::InvalidString("multiplicities must be ≥ 1".into()));
            }
        }
        if let Some(t) = tail {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(Error::InvalidString(format!("tail {t} is not a finite nonnegative length")));
            }
        }
        let mut sorted = lengths;
        sorted.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let mut merged: Vec<(f64, u64)> = Vec::with_capacity(sorted.len());
        for (l, w) in sorted {
            match merged.last_mut() {
                Some(last) if last.0 == l => last.1 += w,
                _ => merged.push((l, w)),
            }
        }
        Ok(Self { representation: Representation::Explicit { lengths: merged, tail } })
    }

    /// Lattice rule with base b > 1 and ratio 1 ≤ m < b.
    pub fn lattice(base: f64, ratio: f64, depth: usize) -> Result<Self> {
        if !(base > 1.0) || !base.is_finite() {
            return Err(Error::InvalidString(format!("lattice base must exceed 1, got {base}")));
        }
        if !(ratio >= 1.0) || !(ratio < base) {
            return Err(Error::InvalidString(format!(
                "lattice ratio must satisfy 1 ≤ m < b (finite total length), got m={ratio}, b={base}"
            )));
        }
        if depth > 2000 {
            return Err(Error::InvalidString(format!("depth {depth} is unreasonably large")));
        }
        Ok(Self { representation: Representation::Lattice { base, ratio, depth } })
    }

    /// Lattice rule with the smallest depth whose omitted length is below `tail_tol`.
    pub fn lattice_with_tail(base: f64, ratio: f64, tail_tol: f64) -> Result<Self> {
        Self::lattice(base, ratio, 0)?;
        let mut depth = 0;
        while depth <= 2000 && lattice_tail(base, ratio, depth) >= tail_tol {
            depth += 1;
        }
        Self::lattice(base, ratio, depth)
    }

    /// The unit interval as a one-length string.
    pub fn single(length: f64) -> Result<Self> {
        Self::explicit(vec![(length, 1)], None)
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self.representation, Representation::Lattice { .. })
    }

    /// Materialized levels, lengths descending.
    pub fn levels(&self) -> Vec<Level> {
        self.level_iter().collect()
    }

    pub fn level_iter(&self) -> Box<dyn Iterator<Item = Level> + '_> {
        match &self.representation {
            Representation::Explicit { lengths, .. } => Box::new(
                lengths
                    .iter()
                    .map(|&(l, w)| Level { length: l, reciprocal: 1.0 / l, weight: w as f64 }),
            ),
            Representation::Lattice { base, ratio, depth } => {
                let (b, m) = (*base, *ratio);
                Box::new((0..=*depth).map(move |j| lattice_level(b, m, j)))
            }
        }
    }

    pub fn level_count(&self) -> usize {
        match &self.representation {
            Representation::Explicit { lengths, .. } => lengths.len(),
            Representation::Lattice { depth, .. } => depth + 1,
        }
    }

    /// Total length of the string, including any analytic tail.
    pub fn total_length(&self) -> f64 {
        match &self.representation {
            Representation::Explicit { lengths, tail } => {
                lengths.iter().map(|&(l, w)| l * w as f64).sum::<f64>() + tail.unwrap_or(0.0)
            }
            Representation::Lattice { base, ratio, .. } => 1.0 / (base - ratio),
        }
    }

    /// Length not covered by the materialized levels.
    pub fn truncation_bound(&self) -> f64 {
        match &self.representation {
            Representation::Explicit { tail, .. } => tail.unwrap_or(0.0),
            Representation::Lattice { base, ratio, depth } => lattice_tail(*base, *ratio, *depth),
        }
    }

    /// Largest reciprocal length up to which every length is materialized
    /// (infinite for finite strings).
    pub fn materialized_up_to(&self) -> f64 {
        match &self.representation {
            Representation::Explicit { lengths, tail } => match tail {
                Some(t) if *t > 0.0 => 1.0 / lengths.last().unwrap().0,
                _ => f64::INFINITY,
            },
            Representation::Lattice { base, depth, .. } => base.powi(*depth as i32 + 1),
        }
    }

    pub fn first_length(&self) -> f64 {
        self.level_iter().next().unwrap().length
    }

    /// Errors when lengths with reciprocal ≤ x may be missing.
    pub fn check_materialized(&self, x: f64) -> Result<()> {
        if x > self.materialized_up_to() {
            return Err(Error::DepthCapExceeded { depth: self.level_count() - 1, needed: x });
        }
        Ok(())
    }

    /// N_L(x): number of reciprocal lengths below x, counted with
    /// multiplicity, half weight at x itself.
    pub fn geometric_counting(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::InvalidParameter(format!("x must be positive, got {x}")));
        }
        self.check_materialized(x)?;
        let mut n = 0.0;
        for lv in self.level_iter() {
            if lv.reciprocal < x {
                n += lv.weight;
            } else if lv.reciprocal == x {
                n += 0.5 * lv.weight;
            } else {
                break;
            }
        }
        Ok(n)
    }

    /// V(ε) = Σ w_j min(2ε, l_j), the inner tube volume.
    pub fn direct_tube_volume(&self, epsilon: f64) -> Result<f64> {
        if !(epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!("ε must be positive, got {epsilon}")));
        }
        let two = 2.0 * epsilon;
        match &self.representation {
            Representation::Explicit { lengths, tail } => {
                let last = lengths.last().unwrap().0;
                let tail = tail.unwrap_or(0.0);
                if tail > 0.0 && two < last {
                    return Err(Error::DepthCapExceeded { depth: lengths.len(), needed: 1.0 / two });
                }
                let body: f64 = lengths.iter().map(|&(l, w)| w as f64 * l.min(two)).sum();
                Ok(body + tail)
            }
            Representation::Lattice { base, ratio, .. } => {
                // saturated levels contribute 2ε·m^j, the rest sum in closed form
                let mut v = 0.0;
                let mut j = 0usize;
                loop {
                    let lv = lattice_level(*base, *ratio, j);
                    if lv.length <= two {
                        break;
                    }
                    v += two * lv.weight;
                    j += 1;
                }
                let rest = if j == 0 { 1.0 / (base - ratio) } else { lattice_tail(*base, *ratio, j - 1) };
                Ok(v + rest)
            }
        }
    }

    pub fn tube_profile(&self, epsilons: &[f64]) -> Result<TubeProfile> {
        let mut eps = epsilons.to_vec();
        eps.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let volumes = eps.iter().map(|&e| self.direct_tube_volume(e)).collect::<Result<_>>()?;
        Ok(TubeProfile { epsilons: eps, volumes })
    }

    /// The measure η_L = Σ w_j δ_{1/l_j}.
    pub fn to_measure(&self) -> GeneralizedString {
        let atoms = self.level_iter().map(|lv| (lv.reciprocal, lv.weight)).collect();
        GeneralizedString::from_sorted_atoms(atoms, Generator::Custom)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StringFile = serde_json::from_str(text)?;
        match file {
            StringFile::Lengths { lengths, tail } => {
                let mut ls = Vec::with_capacity(lengths.len());
                for pair in lengths {
                    let w = pair.1;
                    if w < 1.0 || w.fract() != 0.0 {
                        return Err(Error::InvalidString(format!("multiplicity {w} is not a positive integer")));
                    }
                    ls.push((pair.0, w as u64));
                }
                Self::explicit(ls, tail)
            }
            StringFile::Lattice { lattice } => Self::lattice(lattice.b, lattice.m, lattice.depth),
        }
    }

    pub fn to_json(&self) -> String {
        let file = match &self.representation {
            Representation::Explicit { lengths, tail } => StringFile::Lengths {
                lengths: lengths.iter().map(|&(l, w)| (l, w as f64)).collect(),
                tail: *tail,
            },
            Representation::Lattice { base, ratio, depth } => StringFile::Lattice {
                lattice: LatticeFile { b: *base, m: *ratio, depth: *depth },
            },
        };
        serde_json::to_string(&file).expect("string file serializes")
    }
}

/// Σ_{j > depth} m^j b^{-(j+1)}.
fn lattice_tail(b: f64, m: f64, depth: usize) -> f64 {
    (m / b).powi(depth as i32 + 1) / (b - m)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum StringFile {
    Lengths {
        lengths: Vec<(f64, f64)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tail: Option<f64>,
    },
    Lattice {
        lattice: LatticeFile,
    },
}

#[derive(Debug, Serialize, Deserialize)]
struct LatticeFile {
    b: f64,
    m: f64,
    depth: usize,
}

/// Tube volumes on a descending ε-grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubeProfile {
    pub epsilons: Vec<f64>,
    pub volumes: Vec<f64>,
}

impl TubeProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epsilon,volume\n");
        for (e, v) in self.epsilons.iter().zip(&self.volumes) {
            let _ = writeln!(out, "{e:e},{v:.15e}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_levels_and_length() {
        let cs = cantor_string();
        let lv = cs.levels();
        assert_eq!((lv[0].length, lv[0].weight), (1.0 / 3.0, 1.0));
        assert_eq!((lv[1].reciprocal, lv[1].weight), (9.0, 2.0));
        assert_eq!((lv[2].reciprocal, lv[2].weight), (27.0, 4.0));
        assert!((cs.total_length() - 1.0).abs() < 1e-15);
        assert!(cs.truncation_bound() < 1e-12);
    }

    #[test]
    fn cantor_counting_with_half_jumps() {
        let cs = cantor_string();
        assert_eq!(cs.geometric_counting(10.0).unwrap(), 3.0);
        assert_eq!(cs.geometric_counting(3.0).unwrap(), 0.5);
        assert_eq!(cs.geometric_counting(9.0).unwrap(), 2.0);
        assert_eq!(cs.geometric_counting(2.0).unwrap(), 0.0);
    }

    #[test]
    fn depth_cap_is_enforced() {
        let s = FractalString::lattice(3.0, 2.0, 2).unwrap();
        assert!(s.geometric_counting(27.0).is_ok());
        assert!(matches!(s.geometric_counting(28.0), Err(Error::DepthCapExceeded { .. })));
    }

    #[test]
    fn tube_examples() {
        let cs = cantor_string();
        assert!((cs.direct_tube_volume(1.0 / 18.0).unwrap() - 7.0 / 9.0).abs() < 1e-15);
        assert!((cs.direct_tube_volume(1.0 / 6.0).unwrap() - 1.0).abs() < 1e-15);
        let one = FractalString::single(1.0).unwrap();
        assert!((one.direct_tube_volume(0.2).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn lattice_tube_matches_expanded_explicit() {
        let cs = FractalString::lattice(3.0, 2.0, 40).unwrap();
        let ex = FractalString::explicit(
            cs.levels().iter().map(|l| (l.length, l.weight as u64)).collect(),
            Some(cs.truncation_bound()),
        )
        .unwrap();
        for k in 1..20 {
            let e = 3f64.powi(-k) * 0.37;
            let a = cs.direct_tube_volume(e).unwrap();
            let b = ex.direct_tube_volume(e).unwrap();
            assert!((a - b).abs() < 1e-12, "ε={e}: {a} vs {b}");
        }
    }

    #[test]
    fn rejects_bad_strings() {
        assert!(FractalString::explicit(vec![(0.0, 1)], None).is_err());
        assert!(FractalString::explicit(vec![(1.0, 0)], None).is_err());
        assert!(FractalString::lattice(2.0, 2.0, 5).is_err());
        assert!(FractalString::lattice(0.5, 1.0, 5).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = FractalString::explicit(vec![(0.5, 2), (1.0, 1)], Some(0.01)).unwrap();
        let back = FractalString::from_json(&s.to_json()).unwrap();
        assert_eq!(s, back);
        let l = FractalString::from_json(r#"{"lattice":{"b":3,"m":2,"depth":10}}"#).unwrap();
        assert_eq!(l, FractalString::lattice(3.0, 2.0, 10).unwrap());
        assert!(FractalString::from_json(r#"{"lengths":[[0.5,1.5]]}"#).is_err());
    }

    #[test]
    fn measure_atoms() {
        let m = cantor_string().to_measure();
        assert_eq!(&m.atoms()[..3], &[(3.0, 1.0), (9.0, 2.0), (27.0, 4.0)]);
        let one = FractalString::single(1.0).unwrap().to_measure();
        assert_eq!(one.atoms(), &[(1.0, 1.0)]);
    }
}
