use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hadwiger_core::{kissing_count_with, named_code, parse_body_spec, BodySpec, CosetSubgroup, LatticeD, Method};

fn lattice(name: &str, t: i64) -> LatticeD {
    LatticeD::new(&named_code(name).unwrap(), t).unwrap()
}

fn enumerators(c: &mut Criterion) {
    let mut g = c.benchmark_group("kissing");
    g.sample_size(10);

    let e8 = lattice("hamming8", 2);
    let l2 = BodySpec::lp(8, 2.0).unwrap();
    g.bench_function("coset-exact hamming8 t=2 l2", |b| {
        b.iter(|| kissing_count_with(black_box(&e8), &l2, Method::CosetExact).unwrap())
    });
    g.bench_function("brute-force hamming8 t=2 l2", |b| {
        b.iter(|| kissing_count_with(black_box(&e8), &l2, Method::BruteForce).unwrap())
    });

    let h4 = lattice("hamming8", 4);
    let l1 = BodySpec::lp(8, 1.0).unwrap();
    g.bench_function("coset-exact hamming8 t=4 l1", |b| {
        b.iter(|| kissing_count_with(black_box(&h4), &l1, Method::CosetExact).unwrap())
    });

    let rm = lattice("rm(1,4)", 8);
    let rm_l1 = BodySpec::lp(16, 1.0).unwrap();
    g.bench_function("basis-enum rm(1,4) t=8 l1", |b| {
        b.iter(|| kissing_count_with(black_box(&rm), &rm_l1, Method::BasisEnumeration).unwrap())
    });

    let golay = lattice("golay24", 2);
    let l3 = BodySpec::lp(24, 3.0).unwrap();
    g.bench_function("coset-exact golay24 t=2 l3", |b| {
        b.iter(|| kissing_count_with(black_box(&golay), &l3, Method::CosetExact).unwrap())
    });
    g.finish();

    c.bench_function("coset closure rm(1,4) t=4", |b| {
        let lat = lattice("rm(1,4)", 4);
        b.iter(|| CosetSubgroup::closure(black_box(&lat), 1 << 24).unwrap().len())
    });
}

fn gauges(c: &mut Criterion) {
    let spec = parse_body_spec(
        "block [1,2] lq q=2 w=[1,1] p=2\nblock [3,4] max w=[1,1] p=1\n\
         block [5,6] quad Q=[[1,0.25],[0.25,1]] p=3/2\nblock [7] lq q=1 w=[1] p=3\nblock [8] lq q=3 w=[1] p=1",
    )
    .unwrap();
    let x = [0.3, -0.2, 0.1, 0.4, -0.25, 0.05, 0.6, -0.1];
    c.bench_function("gauge bisection mixed n=8", |b| {
        b.iter(|| spec.gauge(black_box(&x)).unwrap())
    });
    let lp = BodySpec::lp(8, 1.5).unwrap();
    c.bench_function("gauge closed form l1.5 n=8", |b| {
        b.iter(|| lp.gauge(black_box(&x)).unwrap())
    });
}

criterion_group!(benches, enumerators, gauges);
criterion_main!(benches);
