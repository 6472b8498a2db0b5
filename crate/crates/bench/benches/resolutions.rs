use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use garc_bench::{algebra, dense, schulz};
use garc_core::algebra::Builtin;
use garc_core::garc::{schulz_module, schulz_scan, Lambda, ScanOptions};
use garc_core::module::{minimal_resolution, Module};
use garc_core::Field;

fn rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [8, 16, 32] {
        for (label, field) in [("Q", Field::Rationals), ("F101", Field::prime(101).unwrap())] {
            let m = dense(field, n);
            group.bench_with_input(BenchmarkId::new(label, n), &m, |b, m| b.iter(|| black_box(m.rref())));
        }
    }
    group.finish();
}

fn resolutions(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimal_resolution");
    let tp = algebra(Builtin::TruncatedPoly { n: 3 }, Field::Rationals);
    let k = Module::simple(tp, 0).unwrap();
    group.bench_function("residue_field_tp3_bound12", |b| b.iter(|| minimal_resolution(black_box(&k), 12).unwrap()));

    let s = schulz(2);
    let m = schulz_module(&s, &Lambda::Finite(Field::Rationals.one())).unwrap();
    group.bench_function("schulz_cyclic_bound12", |b| b.iter(|| minimal_resolution(black_box(&m), 12).unwrap()));
    group.finish();
}

fn scan(c: &mut Criterion) {
    let q = Field::Rationals;
    let mut group = c.benchmark_group("schulz_scan");
    group.sample_size(10);
    let opts = ScanOptions { window: 12, bound: 13, start_degree: 2, seed: 0 };
    group.bench_function("c2_window12", |b| b.iter(|| schulz_scan(q, &q.from_i64(2), black_box(&opts)).unwrap()));
    group.finish();
}

criterion_group!(benches, rref, resolutions, scan);
criterion_main!(benches);
