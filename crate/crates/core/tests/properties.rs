use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zetalab::explicit::PrimePowerTable;
use zetalab::operator::{apply_functional_calculus, bump, shift_group, weighted_norm, Grid, GridFunction, Symbol};
use zetalab::spectral::{spectral_count_direct, spectral_count_floor};
use zetalab::strings::cantor_string;
use zetalab::zeta::{factorize, format_zero_cache, parse_zero_cache, smallest_prime_factors, zeta, EvalAccuracy, ZetaZero};
use zetalab::FractalString;

fn acc() -> EvalAccuracy {
    EvalAccuracy::default()
}

fn finite_string() -> impl Strategy<Value = FractalString> {
    prop::collection::vec((0.001f64..1.0, 1u64..5), 1..15)
        .prop_map(|ls| FractalString::explicit(ls, None).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zeta_schwarz_reflection(re in -3.0f64..4.0, im in 0.5f64..60.0) {
        let s = Complex64::new(re, im);
        let a = zeta(s, &acc()).unwrap();
        let b = zeta(s.conj(), &acc()).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn spectral_count_matches_floor_sum(s in finite_string(), x in 0.5f64..5e3) {
        prop_assert_eq!(spectral_count_direct(&s, x).unwrap(), spectral_count_floor(&s, x).unwrap());
    }

    #[test]
    fn spectral_count_dominates_geometric(s in finite_string(), x in 0.5f64..5e3) {
        // every reciprocal length l⁻¹ ≤ x is the k = 1 frequency
        prop_assert!(spectral_count_direct(&s, x).unwrap() >= s.geometric_counting(x).unwrap());
    }

    #[test]
    fn tube_volume_monotone_and_bounded(s in finite_string(), e1 in 1e-5f64..1.0, e2 in 1e-5f64..1.0) {
        let (lo, hi) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
        let vlo = s.direct_tube_volume(lo).unwrap();
        let vhi = s.direct_tube_volume(hi).unwrap();
        prop_assert!(vlo <= vhi + 1e-15);
        prop_assert!(vhi <= s.total_length() * (1.0 + 1e-14));
    }

    #[test]
    fn geometric_count_matches_measure(s in finite_string(), x in 0.5f64..5e3) {
        prop_assert_eq!(s.geometric_counting(x).unwrap(), s.to_measure().counting(x).unwrap());
    }

    #[test]
    fn string_json_round_trip(s in finite_string()) {
        prop_assert_eq!(FractalString::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn shift_group_tracks_translation(t in -1.5f64..1.5, c in 0.0f64..2.0) {
        let h = 1.0 / 256.0;
        let grid = Grid::new(-8.0, 8.0, h, 1.0).unwrap();
        let f = GridFunction::from_real(grid, c, bump(-1.0, 1.0)).unwrap();
        let exact = GridFunction::from_real(grid, c, bump(-1.0 + t, 1.0 + t)).unwrap();
        let got = shift_group(&f, t).unwrap();
        // linear interpolation: error ≤ h²/8 · sup|f″|
        let d2 = (1..grid.len() - 1)
            .map(|i| (f.samples[i + 1] - 2.0 * f.samples[i] + f.samples[i - 1]).norm() / (h * h))
            .fold(0.0, f64::max);
        prop_assert!(got.max_abs_diff(&exact).unwrap() <= 1.01 * h * h / 8.0 * d2 + 1e-15);
        if (t / h).fract() == 0.0 {
            prop_assert!(got.max_abs_diff(&exact).unwrap() < 1e-15);
        }
    }
}

#[test]
fn cantor_counts_at_reciprocal_lengths() {
    let cs = cantor_string();
    // 3^k is a jump: 2^k - 1 lengths strictly below, half of the 2^{k-1} at it
    for k in 1..12 {
        let x = 3f64.powi(k);
        let expect = (2f64.powi(k - 1) - 1.0) + 0.5 * 2f64.powi(k - 1);
        assert_eq!(cs.geometric_counting(x).unwrap(), expect, "k={k}");
    }
}

#[test]
fn prime_power_count_matches_factorization_recount() {
    const N: usize = 1_000_000;
    let spf = smallest_prime_factors(N);
    let mut prefix = vec![0.0f64; N + 1];
    for n in 2..=N {
        let f = factorize(n, &spf);
        let w = if f.len() == 1 { 1.0 / f[0].1 as f64 } else { 0.0 };
        prefix[n] = prefix[n - 1] + w;
    }
    let table = PrimePowerTable::new(N as f64).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(1.5..N as f64);
        let fl = x.floor() as usize;
        let mut expect = prefix[fl];
        if x == fl as f64 {
            expect -= 0.5 * (prefix[fl] - prefix[fl - 1]);
        }
        let got = table.count(x).unwrap();
        assert!((got - expect).abs() < 1e-7, "x={x}: {got} vs {expect}");
    }
    // integer arguments exercise the half-weight convention
    for n in [2usize, 4, 8, 9, 12, 997, 1024] {
        let expect = prefix[n - 1] + 0.5 * (prefix[n] - prefix[n - 1]);
        assert!((table.count(n as f64).unwrap() - expect).abs() < 1e-12, "n={n}");
    }
}

#[test]
fn zero_cache_round_trip_is_stable() {
    let zs = vec![
        ZetaZero { t: 14.134725141734693, half_width: 1e-10 },
        ZetaZero { t: 21.022039638771555, half_width: 2e-10 },
    ];
    let text = format_zero_cache(22.0, 1e-12, &zs);
    let parsed = parse_zero_cache(&text).unwrap();
    assert_eq!(parsed.t_max, 22.0);
    for (a, b) in parsed.zeros.iter().zip(&zs) {
        assert!((a.t - b.t).abs() <= a.half_width);
    }
    // formatting the parsed table again changes nothing but the widened widths
    let again = format_zero_cache(parsed.t_max, parsed.tol, &parsed.zeros);
    assert_eq!(again.lines().next(), text.lines().next());
}

#[test]
fn functional_calculus_of_power_is_a_shift() {
    // n^{-∂} is translation by log n
    let grid = Grid::new(-6.0, 10.0, 1.0 / 512.0, 1.0).unwrap();
    for c in [0.0, 0.7, 2.0] {
        let f = GridFunction::from_real(grid, c, bump(-1.0, 1.5)).unwrap();
        let by_fft = apply_functional_calculus(Symbol::Power(3.0), &f, &acc()).unwrap();
        let l3 = 3f64.ln();
        let exact = GridFunction::from_real(grid, c, bump(-1.0 + l3, 1.5 + l3)).unwrap();
        let rel = weighted_norm(&by_fft.sub(&exact).unwrap()) / weighted_norm(&exact);
        assert!(rel < 1e-9, "c={c}: {rel}");
        let id = apply_functional_calculus(Symbol::One, &f, &acc()).unwrap();
        assert!(weighted_norm(&id.sub(&f).unwrap()) < 1e-12 * weighted_norm(&f));
    }
}
