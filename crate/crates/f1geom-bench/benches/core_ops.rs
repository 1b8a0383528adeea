use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use f1geom::bnpair::{bruhat, builtin_gl, coset_geometry, verify_bn, BnVerdict};
use f1geom::braids::rho_image;
use f1geom::coxeter::{catalog_matrix, coxeter_complex, coxeter_group, SphericalClass};
use f1geom::f1linalg::gl_enumerate;
use f1geom::incidence::{automorphism_count, pg_f1};
use f1geom::qnum::{gaussian_binomial, pgl_order_poly};

fn bench_qnum(c: &mut Criterion) {
    let mut group = c.benchmark_group("qnum");
    for n in [16usize, 32, 64] {
        group.bench_with_input(BenchmarkId::new("gaussian_binomial", n), &n, |b, &n| {
            b.iter(|| gaussian_binomial(black_box(n), black_box(n / 2)).unwrap())
        });
    }
    group.bench_function("pgl_order_poly(8)", |b| {
        b.iter(|| pgl_order_poly(black_box(8)))
    });
    group.finish();
}

fn bench_groups(c: &mut Criterion) {
    let mut group = c.benchmark_group("groups");
    group.bench_function("coxeter_group(H3)", |b| {
        let m = catalog_matrix(SphericalClass::H3).unwrap();
        b.iter(|| coxeter_group(black_box(&m), None).unwrap().unwrap())
    });
    group.bench_function("coxeter_complex(A3)", |b| {
        let m = catalog_matrix(SphericalClass::A(3)).unwrap();
        let w = coxeter_group(&m, None).unwrap().unwrap();
        b.iter(|| coxeter_complex(black_box(&w), black_box(&m)).unwrap())
    });
    group.bench_function("gl_enumerate(4,3)", |b| {
        b.iter(|| gl_enumerate(black_box(4), black_box(3), None).unwrap())
    });
    group.bench_function("rho_image(4)", |b| {
        b.iter(|| rho_image(black_box(4), None).unwrap())
    });
    group.finish();
}

fn bench_bn(c: &mut Criterion) {
    let mut group = c.benchmark_group("bnpair");
    group.sample_size(10);
    let (g, bb, nn) = builtin_gl(3, 2, None).unwrap();
    group.bench_function("verify_bn(gl:3:2)", |b| {
        b.iter(|| match verify_bn(black_box(&g), &bb, &nn).unwrap() {
            BnVerdict::Valid(ts) => ts,
            BnVerdict::Invalid { .. } => unreachable!(),
        })
    });
    let ts = match verify_bn(&g, &bb, &nn).unwrap() {
        BnVerdict::Valid(ts) => ts,
        BnVerdict::Invalid { .. } => unreachable!(),
    };
    group.bench_function("bruhat(gl:3:2)", |b| b.iter(|| bruhat(black_box(&ts)).unwrap()));
    group.bench_function("coset_geometry(gl:3:2)", |b| {
        b.iter(|| coset_geometry(black_box(&ts)).unwrap())
    });
    group.finish();
}

fn bench_incidence(c: &mut Criterion) {
    let mut group = c.benchmark_group("incidence");
    group.bench_function("pg_f1(4)", |b| b.iter(|| pg_f1(black_box(4), None).unwrap()));
    let g = pg_f1(4, None).unwrap();
    group.bench_function("automorphism_count(pg_f1(4))", |b| {
        b.iter(|| automorphism_count(black_box(&g)))
    });
    group.finish();
}

criterion_group!(benches, bench_qnum, bench_groups, bench_bn, bench_incidence);
criterion_main!(benches);
