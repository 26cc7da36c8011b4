//! Criterion benchmarks for the hot paths: invariant evaluation, the
//! resultant kernel, j-pair arithmetic, and the tuple-search inner loops.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use genus2_core::census::involutions_one_fixed_point;
use genus2_core::igusa::{igusa_invariants, BinarySextic};
use genus2_core::locus::{igusa_from_uv, jpair_from_uv, l2_equation, UVPoint};
use genus2_core::rational::{int, rat};
use genus2_core::search::{count_triple_classes, SearchConfig};
use genus2_core::tuples::CaseId;
use genus2_core::unipoly::{rational_roots, resultant, UniPoly};
use std::hint::black_box;

fn bench_igusa(c: &mut Criterion) {
    let f = BinarySextic::parse("-1 0 5/3 0 -7 0 1").unwrap();
    c.bench_function("igusa_invariants", |b| {
        b.iter(|| igusa_invariants(black_box(&f)))
    });
}

fn bench_resultant(c: &mut Criterion) {
    let f = UniPoly::new((0..7).map(|k| rat(3 * k - 7, k + 1)).collect());
    let g = f.derivative();
    c.bench_function("resultant_sextic", |b| {
        b.iter(|| resultant(black_box(&f), black_box(&g)).unwrap())
    });
}

fn bench_rational_roots(c: &mut Criterion) {
    // a cubic of the kind the moduli inversion solves
    let f = UniPoly::new(vec![int(0), int(-4050), int(36), rat(-2, 25)]);
    c.bench_function("rational_roots_cubic", |b| {
        b.iter(|| rational_roots(black_box(&f)).unwrap())
    });
}

fn bench_locus(c: &mut Criterion) {
    let p = UVPoint::new(rat(17, 3), rat(-40, 7)).unwrap();
    c.bench_function("jpair_from_uv", |b| b.iter(|| jpair_from_uv(black_box(&p))));
    let inv = igusa_from_uv(&p);
    c.bench_function("l2_equation", |b| b.iter(|| l2_equation(black_box(&inv))));
}

fn bench_search(c: &mut Criterion) {
    c.bench_function("triple_search_case4_n11", |b| {
        b.iter_batched(
            || SearchConfig::exhaustive(CaseId::Case4, 11),
            |cfg| count_triple_classes(&cfg).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("involution_enumeration_n11", |b| {
        b.iter(|| involutions_one_fixed_point(black_box(11)))
    });
}

criterion_group!(
    benches,
    bench_igusa,
    bench_resultant,
    bench_rational_roots,
    bench_locus,
    bench_search
);
criterion_main!(benches);
