use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modgeo::enumerate::{self, ClassFilter};
use modgeo::geometry;
use modgeo::Exec;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn classes(c: &mut Criterion) {
    let mut group = c.benchmark_group("classes");
    for tau in [16u32, 20] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, tau), &tau, |b, &tau| {
                b.iter(|| {
                    enumerate::count_classes(black_box(tau), ClassFilter::all(), exec).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn reciprocal(c: &mut Criterion) {
    let mut group = c.benchmark_group("reciprocal");
    for t in [16u32, 20] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, t), &t, |b, &t| {
                b.iter(|| {
                    enumerate::count_reciprocal_classes(black_box(t), Some(3), true, exec).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn audit(c: &mut Criterion) {
    let mut group = c.benchmark_group("depth-audit");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 9), &9u32, |b, &tau| {
            b.iter(|| geometry::depth_audit(black_box(tau), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, classes, reciprocal, audit);
criterion_main!(benches);
