use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use crs_bench::instance;
use crs_core::classical::{bma, bma_gz_decode};
use crs_core::gmd::gmd_decode;
use crs_core::interp::{choose_params, gs_interpolate, ErasureSet};
use crs_core::rootfind::{mrr, newton_refine, truncate_start};
use crs_core::{GmdConfig, Tolerances};

fn bench_classical(c: &mut Criterion) {
    let tol = Tolerances::default();
    let inst = instance(16, 4, 5, 11);
    c.bench_function("bma_16_4_t5", |b| {
        b.iter(|| black_box(bma(&inst.parity, &inst.received, &tol).unwrap()))
    });
    c.bench_function("bma_gz_decode_16_4_t5", |b| {
        b.iter(|| {
            black_box(bma_gz_decode(&inst.params, &inst.parity, &inst.received, &tol).unwrap())
        })
    });
}

fn bench_interpolation(c: &mut Criterion) {
    let tol = Tolerances::default();
    let inst = instance(16, 4, 8, 13);
    let gs = choose_params(16, 4, 8).unwrap();
    c.bench_function("gs_interpolate_16_4_t8", |b| {
        b.iter(|| {
            black_box(gs_interpolate(
                &inst.params,
                &inst.received,
                &ErasureSet::empty(),
                &gs,
                &tol,
            ))
        })
    });
}

fn bench_rootfind(c: &mut Criterion) {
    let tol = Tolerances::default();
    let inst = instance(16, 4, 8, 17);
    let gs = choose_params(16, 4, 8).unwrap();
    let out = gs_interpolate(
        &inst.params,
        &inst.received,
        &ErasureSet::empty(),
        &gs,
        &tol,
    );
    c.bench_function("mrr_16_4_t8", |b| {
        b.iter(|| black_box(mrr(&out.poly, 4, &tol)))
    });
    let raw = mrr(&out.poly, 4, &tol);
    let z0 = truncate_start(&raw.candidates[0].coeffs, 4);
    c.bench_function("newton_refine_16_4_t8", |b| {
        b.iter(|| black_box(newton_refine(&inst.params, &out.poly, &z0, &tol)))
    });
}

fn bench_gmd(c: &mut Criterion) {
    let inst = instance(16, 4, 8, 19);
    let cfg = GmdConfig::with_practical_radius(&inst.params).unwrap();
    let mut group = c.benchmark_group("gmd");
    group.sample_size(10);
    group.bench_function("gmd_decode_16_4_t8", |b| {
        b.iter(|| black_box(gmd_decode(&inst.params, &inst.received, &cfg).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_classical,
    bench_interpolation,
    bench_rootfind,
    bench_gmd
);
criterion_main!(benches);
