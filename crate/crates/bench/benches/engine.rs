use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use skewring::endo::lift_endo_matrix;
use skewring::ring::{build_full_matrix, build_gf4, build_upper_triangular, build_zn};
use skewring::theorems::corpus_default;
use skewring::{
    check_property, enumerate_endos, prime_radical, smul, CheckOptions, Endo, Property, SkewPoly,
    SkewRing,
};

fn arithmetic(c: &mut Criterion) {
    let gf4 = build_gf4();
    let frob = Endo::new(&gf4, vec![0, 1, 3, 2], "frobenius").unwrap();
    let ctx = SkewRing::new(&frob);
    let f = SkewPoly::new(&ctx, vec![1, 2, 3, 1, 2, 3, 1, 2]).unwrap();
    let g = SkewPoly::new(&ctx, vec![3, 1, 2, 3, 1, 2, 3, 1]).unwrap();
    c.bench_function("smul gf4 degree 7", |b| {
        b.iter(|| smul(black_box(&f), black_box(&g)).unwrap())
    });
}

fn structure(c: &mut Criterion) {
    let u3 = build_upper_triangular(&build_zn(4).unwrap(), 3).unwrap();
    c.bench_function("prime radical U3(Z4)", |b| {
        b.iter(|| prime_radical(black_box(&u3)).unwrap())
    });
    let m2 = build_full_matrix(&build_zn(2).unwrap(), 2).unwrap();
    c.bench_function("endomorphisms M2(Z2)", |b| {
        b.iter(|| enumerate_endos(black_box(&m2)).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    let z4 = build_zn(4).unwrap();
    let u2 = build_upper_triangular(&z4, 2).unwrap();
    let id = lift_endo_matrix(&Endo::identity(&z4), &u2).unwrap();
    let opts = CheckOptions {
        degree: 1,
        ..CheckOptions::default()
    };
    c.bench_function("almost armendariz U2(Z4) degree 1", |b| {
        b.iter(|| {
            check_property(
                black_box(&id),
                Property::parse("almost-armendariz").unwrap().0,
                &opts,
            )
            .unwrap()
        })
    });
    let corpus = corpus_default().filter("Z2");
    let opts = CheckOptions {
        degree: 2,
        ..CheckOptions::default()
    };
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function("skew almost armendariz Z2 entries degree 2", |b| {
        b.iter(|| {
            for e in corpus.iter() {
                black_box(
                    check_property(
                        &e.alpha,
                        Property::parse("alpha-skew-almost-armendariz").unwrap().0,
                        &opts,
                    )
                    .unwrap(),
                );
            }
        })
    });
    group.finish();
}

criterion_group!(benches, arithmetic, structure, scans);
criterion_main!(benches);
