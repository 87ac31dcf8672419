use std::f64::consts::{FRAC_PI_3, TAU};

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use jcm_bench::{coherent_amplitudes, isotherm_params};
use jcm_core::asymptotics::AsymptoticDistribution;
use jcm_core::dynamics::{evolve, time_average_oracle};
use jcm_core::sweeps::{isotherm_grid, linspace};
use jcm_core::{poisson_coefficients, Horizon, Observable};

fn closed_forms(c: &mut Criterion) {
    let params = isotherm_params();
    c.bench_function("poisson-100", |b| {
        b.iter(|| poisson_coefficients(black_box(100.0), 1e-12).unwrap())
    });
    let amps = coherent_amplitudes(&params, 100.0, FRAC_PI_3, 0.5);
    c.bench_function("limiting-distribution-100", |b| {
        b.iter(|| AsymptoticDistribution::new(black_box(&amps), &params, 100.0))
    });
    c.bench_function("evolve-100", |b| b.iter(|| evolve(black_box(&amps), &params, 1.0e6)));
}

fn oracle(c: &mut Criterion) {
    let params = isotherm_params();
    let amps = coherent_amplitudes(&params, 100.0, FRAC_PI_3, 0.5);
    let horizon = Horizon::new(100.0 * TAU / 0.001, 10_000).unwrap();
    c.bench_function("oracle-excited-10k", |b| {
        b.iter(|| time_average_oracle(&amps, &params, Observable::ExcitedProbability, horizon))
    });
}

fn grid(c: &mut Criterion) {
    let params = isotherm_params();
    let gammas = linspace(0.0, std::f64::consts::PI, 19).unwrap();
    let phis = linspace(0.0, TAU, 37).unwrap();
    c.bench_function("isotherm-grid-19x37", |b| {
        b.iter(|| isotherm_grid(&params, 100.0, &gammas, &phis, 1e-12).unwrap())
    });
}

criterion_group!(benches, closed_forms, oracle, grid);
criterion_main!(benches);
