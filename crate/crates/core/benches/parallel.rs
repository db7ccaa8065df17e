use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use werner_core::{
    criteria::worst_cauchy_schwarz_with, decompose_werner, threshold, verify_with, werner, Config, Exec, ScanMode,
    VerifyTolerances, WernerParams,
};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn generate(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose_werner");
    group.sample_size(10);
    for (d, n) in [(3, 3), (2, 5), (4, 3)] {
        let s = threshold(d, n).unwrap();
        for (name, exec) in POLICIES {
            let config = Config { exec, ..Config::default() };
            group.bench_with_input(BenchmarkId::new(name, format!("d{d}n{n}")), &s, |b, s| {
                b.iter(|| decompose_werner(black_box(d), black_box(n), s, &config).unwrap())
            });
        }
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (d, n) in [(3, 3), (2, 5)] {
        let s = threshold(d, n).unwrap();
        let cert = decompose_werner(d, n, &s, &Config::default()).unwrap();
        let target = werner(&WernerParams::new(d, n, s.to_f64()).unwrap()).unwrap();
        let tol = VerifyTolerances::default();
        for (name, exec) in POLICIES {
            group.bench_function(BenchmarkId::new(name, format!("d{d}n{n}")), |b| {
                b.iter(|| verify_with(black_box(&cert), &target, &tol, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn quadruple_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("cauchy_schwarz_scan");
    let (d, n) = (3, 6);
    let rho = werner(&WernerParams::new(d, n, 0.01).unwrap()).unwrap();
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::new(name, format!("d{d}n{n}")), |b| {
            b.iter(|| worst_cauchy_schwarz_with(black_box(&rho), d, n, ScanMode::Symmetric, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, generate, verification, quadruple_scan);
criterion_main!(benches);
