use criterion::{black_box, criterion_group, criterion_main, Criterion};
use helionics_bench::{optimized, spec};
use helionics_core::densities::{one_density, pair_density};
use helionics_core::hamiltonian::{default_start, energy, optimize};
use helionics_core::measures::{info_density_p, mutual_information};
use helionics_core::quadrature::{integrate_pair, integrate_radial, log_space};
use helionics_core::{MeasureReport, MiMode, Space, StateKind};

fn quadrature(c: &mut Criterion) {
    let s = spec();
    c.bench_function("radial r^2 e^-r", |b| {
        b.iter(|| integrate_radial(|r| r * r * (-black_box(1.0) * r).exp(), &s).unwrap())
    });
    c.bench_function("pair e^-(x+y)/(1+x+y)", |b| {
        b.iter(|| integrate_pair(|x, y| (-(x + y)).exp() / (1.0 + x + y), &s).unwrap())
    });
}

fn hamiltonian(c: &mut Criterion) {
    let state = optimized(StateKind::Triplet, 2.0);
    c.bench_function("energy triplet", |b| b.iter(|| energy(black_box(&state))));
    c.bench_function("optimize singlet Z=2", |b| {
        b.iter(|| optimize(StateKind::Singlet, 2.0, default_start(StateKind::Singlet, 2.0)).unwrap())
    });
}

fn measures(c: &mut Criterion) {
    let s = spec();
    let state = optimized(StateKind::Triplet, 3.0);
    let one = one_density(&state, Space::Momentum).to_unity().unwrap();
    let pair = pair_density(&state, Space::Momentum).to_unity().unwrap();
    let mut g = c.benchmark_group("measures");
    g.sample_size(10);
    g.bench_function("mutual information direct", |b| {
        b.iter(|| mutual_information(&pair, &one, MiMode::Direct, &s).unwrap())
    });
    g.bench_function("report triplet Z=3", |b| b.iter(|| MeasureReport::evaluate(&state, &s).unwrap()));
    let ps = log_space(1e-3, 10.0, 100);
    g.bench_function("info density 100 points", |b| b.iter(|| info_density_p(&state, &ps, &s).unwrap()));
    g.finish();
}

criterion_group!(benches, quadrature, hamiltonian, measures);
criterion_main!(benches);
