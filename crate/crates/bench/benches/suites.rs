use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use minuscule_core::quiver::{construction_one, PeakOrdering};
use minuscule_core::theorems::catalog::classify_exceptional;
use minuscule_core::theorems::verify::{context, d8_non_simple_instance, sweep, OrderingSelection};
use minuscule_core::{Quiver, WeylElement};

fn weyl_arithmetic(c: &mut Criterion) {
    let ctx = context("E7".parse().unwrap(), 7).unwrap();
    let w0 = ctx.reference_word();
    c.bench_function("e7 longest minimal rep from word", |b| {
        b.iter(|| WeylElement::from_word(&ctx.sys, black_box(&w0)).unwrap())
    });
    c.bench_function("e7 orbit enumeration", |b| {
        b.iter(|| ctx.enumerate_minuscule().len())
    });
}

fn quivers(c: &mut Criterion) {
    let ctx = context("E7".parse().unwrap(), 7).unwrap();
    let word = "7 6 5 4 2 3 1 4 5 3 4 6 5 2 4 3 7 6 5 4 1 3 2 4 5 6 7"
        .parse()
        .unwrap();
    c.bench_function("e7 quiver build", |b| {
        b.iter(|| Quiver::build(&ctx.sys, black_box(&word)).unwrap())
    });
    let q = Quiver::build(&ctx.sys, &word).unwrap();
    let order = PeakOrdering::Standard.resolve(&q).unwrap();
    c.bench_function("e7 construction one", |b| {
        b.iter(|| construction_one(&ctx.sys, &q, black_box(&order)).unwrap())
    });
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    let e6 = context("E6".parse().unwrap(), 1).unwrap();
    g.bench_function("e6 catalog", |b| {
        b.iter(|| classify_exceptional(&e6).unwrap())
    });
    let d7 = context("D7".parse().unwrap(), 7).unwrap();
    g.bench_function("d7 sweep, all orderings", |b| {
        b.iter(|| sweep(&d7, &OrderingSelection::All).unwrap())
    });
    g.bench_function("d8 non-simple instance", |b| {
        b.iter(|| d8_non_simple_instance().unwrap())
    });
    g.finish();
}

criterion_group!(benches, weyl_arithmetic, quivers, suites);
criterion_main!(benches);
