use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use reesse_core::attack::run_attack_with;
use reesse_core::fixtures;
use reesse_core::keys::OmegaFamily;
use reesse_core::par::Exec;
use reesse_core::reproduce::table2_filter;
use reesse_core::study::{study_false_positive_with, StudyConfig};

const MODES: [(&str, Exec); 2] = [("serial", Exec::Serial), ("parallel", Exec::Parallel)];

fn full_attack(c: &mut Criterion) {
    let public = fixtures::example5_private().public_key();
    let filter = table2_filter();
    let mut group = c.benchmark_group("run_attack_n10");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_attack_with(black_box(&public), &filter, exec).unwrap())
        });
    }
    group.finish();
}

fn false_positive_study(c: &mut Criterion) {
    let cfg = StudyConfig {
        n: 8,
        rho: 43,
        family: OmegaFamily::Scaled,
        omega_delta: 1,
        trials: 200,
        seed: 1,
    };
    let mut group = c.benchmark_group("false_positive_200");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| study_false_positive_with(black_box(cfg), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, full_attack, false_positive_study);
criterion_main!(benches);
