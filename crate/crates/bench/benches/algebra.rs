use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use k3lab::construction::{invariance_trials, verify_relation};
use k3lab::mukai::overlattice;
use k3lab::systems::{sextic_smoothness_probe, QuadricSystem};
use k3lab_bench::{
    dense_net, dense_pencil, diagonal_net, diagonal_pencil, k3_overlattice_spec, prime,
};

fn discriminants(c: &mut Criterion) {
    let pencil = dense_pencil();
    let net = dense_net();
    c.bench_function("pencil_discriminant", |b| {
        b.iter(|| black_box(&pencil).discriminant_poly())
    });
    c.bench_function("net_discriminant", |b| {
        b.iter(|| black_box(&net).discriminant_poly())
    });
    c.bench_function("j_invariant", |b| {
        b.iter(|| black_box(&pencil).j_invariant())
    });
}

fn finite_fields(c: &mut Criterion) {
    let pencil = diagonal_pencil();
    let sextic = diagonal_net().discriminant_poly();
    let mut group = c.benchmark_group("point_count");
    for p in [5u64, 13, 31] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &prime(p), |b, &p| {
            b.iter(|| pencil.count_points(p))
        });
    }
    group.finish();
    let primes = [7, 11, 13].map(prime);
    c.bench_function("sextic_probe", |b| {
        b.iter(|| sextic_smoothness_probe(black_box(&sextic), &primes))
    });
}

fn sampling(c: &mut Criterion) {
    let pencil = diagonal_pencil().reduce(prime(11)).unwrap();
    let net = diagonal_net().reduce(prime(13)).unwrap();
    let mut group = c.benchmark_group("relation");
    group.sample_size(20);
    group.bench_function("pencil_100", |b| {
        b.iter(|| verify_relation(&pencil, 100, 0))
    });
    group.bench_function("net_100", |b| b.iter(|| verify_relation(&net, 100, 0)));
    group.bench_function("invariance_net_100", |b| {
        b.iter(|| invariance_trials(&net, 100, 0))
    });
    group.finish();
}

fn lattices(c: &mut Criterion) {
    let spec = k3_overlattice_spec();
    c.bench_function("k3_overlattice", |b| {
        b.iter(|| overlattice(black_box(&spec)))
    });
}

criterion_group!(benches, discriminants, finite_fields, sampling, lattices);
criterion_main!(benches);
