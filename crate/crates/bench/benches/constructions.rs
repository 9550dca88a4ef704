use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sicmub_bench::generic_vector;
use sicmub_core::bases::{check_mub_set, mub_prime};
use sicmub_core::geometry::{hesse_configuration, segre_configuration};
use sicmub_core::optimizer::{search, DefectObjective, SearchConfig};
use sicmub_core::sic::{sic_d4, sic_defect};
use sicmub_core::Tolerance;

fn bases(c: &mut Criterion) {
    let mut group = c.benchmark_group("mub_prime");
    for dim in [3usize, 7, 11] {
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |b, &dim| b.iter(|| mub_prime(black_box(dim))));
    }
    group.finish();
    let set = mub_prime(7).unwrap();
    c.bench_function("check_mub_set/7", |b| b.iter(|| check_mub_set(black_box(&set), Tolerance::DEFAULT)));
}

fn sic(c: &mut Criterion) {
    let d4 = sic_d4();
    c.bench_function("sic_defect/4", |b| b.iter(|| sic_defect(black_box(&d4))));
    let mut group = c.benchmark_group("defect_gradient");
    for dim in [3usize, 5, 7] {
        let objective = DefectObjective::for_dim(dim).unwrap();
        let psi = generic_vector(dim);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &psi, |b, psi| {
            b.iter(|| objective.value_and_gradient(black_box(psi)))
        });
    }
    group.finish();
}

fn geometry(c: &mut Criterion) {
    c.bench_function("hesse_configuration", |b| b.iter(hesse_configuration));
    c.bench_function("segre_configuration/5", |b| b.iter(|| segre_configuration(black_box(5))));
}

fn optimizer(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for dim in [3usize, 5] {
        let config = SearchConfig { restarts: 8, seed: 1, ..SearchConfig::new(dim) };
        group.bench_with_input(BenchmarkId::from_parameter(dim), &config, |b, config| b.iter(|| search(config)));
    }
    group.finish();
}

criterion_group!(benches, bases, sic, geometry, optimizer);
criterion_main!(benches);
