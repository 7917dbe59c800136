use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use quasinv::config::Configuration;
use quasinv::harmonic::defining_integrals;
use quasinv::operators::{gram_matrix, integral_apply};
use quasinv::quasi::{condition_matrix, poincare_numerator, quasi_space};

fn nullspace(c: &mut Criterion) {
    let mut g = c.benchmark_group("nullspace");
    for m in [1, 3] {
        let conf = Configuration::a2(m).unwrap();
        let (_, matrix) = condition_matrix(&conf, 12);
        g.bench_with_input(BenchmarkId::new("a2_degree12", m), &matrix, |b, mat| b.iter(|| black_box(mat.nullspace())));
    }
    g.finish();
}

fn quasi(c: &mut Criterion) {
    let conf = Configuration::c2(2, 1).unwrap();
    c.bench_function("quasi_space/c2_2_1_degree10", |b| b.iter(|| black_box(quasi_space(&conf, 10))));
    let conf = Configuration::a2(2).unwrap();
    c.bench_function("poincare/a2_2", |b| b.iter(|| black_box(poincare_numerator(&conf, 18).unwrap())));
}

fn integrals(c: &mut Criterion) {
    let conf = Configuration::a2(2).unwrap();
    let specs = defining_integrals(&conf);
    let q = quasi_space(&conf, 7).basis.remove(0);
    let mut g = c.benchmark_group("integral_apply");
    g.sample_size(20);
    for spec in &specs {
        g.bench_with_input(BenchmarkId::new("a2_2", spec.degree()), spec, |b, s| {
            b.iter(|| black_box(integral_apply(&conf, s, &q)))
        });
    }
    g.finish();
    let mut g = c.benchmark_group("gram");
    g.sample_size(10);
    g.bench_function("a2_1_degree6", |b| {
        let conf = Configuration::a2(1).unwrap();
        b.iter(|| black_box(gram_matrix(&conf, 6).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, nullspace, quasi, integrals);
criterion_main!(benches);
