use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use zetalab::dimensions::{tube_formula_via_dimensions, Window};
use zetalab::explicit::explicit_formula_reconstruction;
use zetalab::operator::{
    apply_functional_calculus, apply_mobius_inverse, apply_spectral_operator_direct, ShiftRule, Symbol,
};
use zetalab::spectral::spectral_count_direct;
use zetalab::strings::cantor_string;
use zetalab::zeta::{find_critical_zeros, first_zeros, zeta, EvalAccuracy};
use zetalab_bench::{operator_input, strip_points};

fn zeta_eval(c: &mut Criterion) {
    let acc = EvalAccuracy::default();
    let mut g = c.benchmark_group("zeta");
    for s in strip_points() {
        g.bench_with_input(BenchmarkId::from_parameter(s.im), &s, |b, &s| b.iter(|| zeta(black_box(s), &acc)));
    }
    g.finish();
}

fn zeros(c: &mut Criterion) {
    let acc = EvalAccuracy::default();
    let mut g = c.benchmark_group("zeros");
    g.sample_size(10);
    g.bench_function("t_max=100", |b| b.iter(|| find_critical_zeros(black_box(100.0), &acc)));
    g.finish();
}

fn strings(c: &mut Criterion) {
    let cs = cantor_string();
    let window = Window::new(-10.0, 200.0).unwrap();
    c.bench_function("cantor tube via dimensions", |b| {
        b.iter(|| tube_formula_via_dimensions(&cs, black_box(1e-4), &window))
    });
    c.bench_function("cantor spectral count x=1e4", |b| b.iter(|| spectral_count_direct(&cs, black_box(1e4))));
}

fn operators(c: &mut Criterion) {
    let acc = EvalAccuracy::default();
    let f = operator_input(2.0);
    let mut g = c.benchmark_group("operator");
    g.sample_size(10);
    g.bench_function("direct shift sum", |b| {
        b.iter(|| apply_spectral_operator_direct(black_box(&f), ShiftRule::Interpolate))
    });
    g.bench_function("mobius inverse", |b| b.iter(|| apply_mobius_inverse(black_box(&f), ShiftRule::LatticeAligned)));
    g.bench_function("fourier multiplier", |b| b.iter(|| apply_functional_calculus(Symbol::Zeta, black_box(&f), &acc)));
    g.finish();
}

fn explicit(c: &mut Criterion) {
    let zs = first_zeros(320, &EvalAccuracy::default()).unwrap();
    c.bench_function("explicit formula 320 zeros", |b| {
        b.iter(|| explicit_formula_reconstruction(black_box(500.5), 320, &zs))
    });
}

criterion_group!(benches, zeta_eval, zeros, strings, operators, explicit);
criterion_main!(benches);
