use std::hint::black_box;

use brkit_bench::{circulant, graded_supports, graded_system};
use brkit_core::{
    degree_via_integral, mixed_volume_ie, mixed_volume_interp, multistart_newton, parse_system, permanent_ryser,
    reduce_permanent, root_bound, zonotope_mixed_volume, DegreeIntegralConfig, NewtonConfig,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::BigRational;

fn mixed_volume(c: &mut Criterion) {
    let mut g = c.benchmark_group("mixed_volume");
    for d in 2..=3 {
        let sup = graded_supports(d);
        g.bench_with_input(BenchmarkId::new("inclusion_exclusion", d), &sup, |b, s| {
            b.iter(|| mixed_volume_ie(black_box(s)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("interpolation", d), &sup, |b, s| {
            b.iter(|| mixed_volume_interp(black_box(s)).unwrap())
        });
    }
    g.finish();
}

fn permanent(c: &mut Criterion) {
    let mut g = c.benchmark_group("permanent");
    for n in [6, 9, 12] {
        let m = circulant(n, 3);
        let q: Vec<Vec<BigRational>> = m
            .rows()
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        g.bench_with_input(BenchmarkId::new("ryser", n), &m, |b, m| {
            b.iter(|| permanent_ryser(black_box(m.rows())).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("zonotope", n), &q, |b, q| {
            b.iter(|| zonotope_mixed_volume(black_box(q)).unwrap())
        });
    }
    g.sample_size(10);
    g.bench_function("reduce_4x4", |b| b.iter(|| reduce_permanent(black_box(&circulant(4, 2)), 4, 1).unwrap()));
    g.finish();
}

fn multistart(c: &mut Criterion) {
    let mut g = c.benchmark_group("multistart");
    g.sample_size(10);
    for d in 2..=3 {
        let s = graded_system(d, 3);
        let target = (1..=d).product::<usize>();
        let cfg = NewtonConfig::default();
        let r = root_bound(&s, &cfg).radius;
        g.bench_with_input(BenchmarkId::from_parameter(d), &s, |b, s| {
            b.iter(|| multistart_newton(black_box(s), Some(target), r, &cfg))
        });
    }
    g.finish();
}

fn integral(c: &mut Criterion) {
    let mut g = c.benchmark_group("degree_integral");
    g.sample_size(10);
    let s = parse_system(1, &["z1^3 - 2*z1 + 1"]).unwrap();
    for samples in [100_000, 400_000] {
        let cfg = DegreeIntegralConfig {
            samples: Some(samples),
            ..DegreeIntegralConfig::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(samples), &cfg, |b, cfg| {
            b.iter(|| degree_via_integral(black_box(&s), cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, mixed_volume, permanent, multistart, integral);
criterion_main!(benches);
