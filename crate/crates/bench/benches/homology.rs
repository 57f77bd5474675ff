use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lscat_core::{bar_homology, catalog, cobar_homology, mwgt_lower, MwgtOptions};

fn bar(c: &mut Criterion) {
    let mut group = c.benchmark_group("bar_homology");
    group.sample_size(10);
    for (name, prime, cutoff) in [("G2", 2, 16), ("F4", 2, 16), ("E8", 2, 16), ("E8", 3, 16)] {
        let entry = catalog::get(name, prime).unwrap();
        group.bench_with_input(BenchmarkId::new(entry.label(), cutoff), &cutoff, |b, &n| {
            b.iter(|| bar_homology(black_box(&entry.algebra), n).unwrap())
        });
    }
    group.finish();
}

fn cobar(c: &mut Criterion) {
    let mut group = c.benchmark_group("cobar_homology");
    group.sample_size(10);
    for (name, prime) in [("G2", 2), ("F4", 2), ("F4", 3), ("E8", 2)] {
        let entry = catalog::get(name, prime).unwrap();
        let coalgebra = entry.loop_coalgebra.clone().unwrap();
        group.bench_with_input(BenchmarkId::new(entry.label(), 20), &20, |b, &n| {
            b.iter(|| cobar_homology(black_box(&coalgebra), n).unwrap())
        });
    }
    group.finish();
}

fn mwgt(c: &mut Criterion) {
    let mut group = c.benchmark_group("mwgt_lower");
    for entry in catalog::all() {
        group.bench_function(entry.label(), |b| {
            b.iter(|| {
                mwgt_lower(black_box(&entry.algebra), &entry.action_table, &entry.z_classes, MwgtOptions::default())
                    .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bar, cobar, mwgt);
criterion_main!(benches);
