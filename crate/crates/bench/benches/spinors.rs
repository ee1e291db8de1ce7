use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use spinor_lab::Suite;
use spinor_lab_core::{
    bilinears, family, gamma_closed_form, gamma_from_spin_sums, sample_points, symmetry_ledger, PhaseMode,
};

fn construction(c: &mut Criterion) {
    let p = sample_points(1, 1, PhaseMode::Generic)[0];
    c.bench_function("family", |b| b.iter(|| family(black_box(p.kin), black_box(p.phases))));
    c.bench_function("gamma spin sum", |b| b.iter(|| gamma_from_spin_sums(black_box(p.kin), black_box(p.phases))));
    c.bench_function("gamma closed form", |b| b.iter(|| gamma_closed_form(black_box(p.kin), black_box(p.phases))));
    let psi = family(p.kin, p.phases).unwrap()[0].psi;
    c.bench_function("bilinears", |b| b.iter(|| bilinears(black_box(&psi))));
}

fn ledger(c: &mut Criterion) {
    let p = sample_points(2, 1, PhaseMode::Generic)[0];
    c.bench_function("symmetry ledger", |b| b.iter(|| symmetry_ledger(black_box(p.kin), black_box(p.phases), 1e-10)));
}

// one point of a sweep, and a small sweep end to end
fn sweep(c: &mut Criterion) {
    let suite = Suite::new(1e-10, true);
    let p = sample_points(3, 1, PhaseMode::Generic)[0];
    c.bench_function("suite point", |b| b.iter(|| suite.evaluate(black_box(p.kin), black_box(p.phases))));
    let points = sample_points(42, 100, PhaseMode::Generic);
    c.bench_function("sweep 100", |b| b.iter(|| suite.run(black_box(&points))));
}

criterion_group!(benches, construction, ledger, sweep);
criterion_main!(benches);
