use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gl2ode::cartanframe::{assemble_frame, extract_curvature, verify_point};
use gl2ode::expr::ZeroTestConfig;
use gl2ode::gl2::rep_generators;
use gl2ode::jetode::{check_wunschmann, classify5};
use gl2ode_bench::{frame, spec};

fn representation(c: &mut Criterion) {
    c.bench_function("rep_generators_9", |b| b.iter(|| rep_generators(black_box(9)).unwrap()));
}

fn jet(c: &mut Criterion) {
    let cfg = ZeroTestConfig::default();
    let mut group = c.benchmark_group("jet");
    group.sample_size(10);
    for name in ["ex54", "exy4"] {
        let s = spec(name);
        group.bench_function(format!("wunschmann_{name}"), |b| b.iter(|| check_wunschmann(&s, &cfg).unwrap()));
        group.bench_function(format!("classify5_{name}"), |b| b.iter(|| classify5(&s, &cfg).unwrap()));
    }
    group.finish();
}

fn cartan(c: &mut Criterion) {
    let mut group = c.benchmark_group("frame");
    group.sample_size(10);
    let s = spec("ex54");
    group.bench_function("assemble_frame_ex54", |b| b.iter(|| assemble_frame(&s).unwrap()));
    let (fb, point) = frame("ex54");
    group.bench_function("verify_point_ex54", |b| b.iter(|| verify_point(&fb, &point, 60).unwrap()));
    group.bench_function("extract_curvature_ex54", |b| b.iter(|| extract_curvature(&fb, &point, 60).unwrap()));
    group.finish();
}

criterion_group!(benches, representation, jet, cartan);
criterion_main!(benches);
