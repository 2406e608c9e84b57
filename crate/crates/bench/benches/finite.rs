use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use orthopack_core::finite_group::{
    closed_form_ft, discrete_cube, finite_certificate, phi, CubeParams, MaskOracle, MaskPolynomial,
};

fn oracle(c: &mut Criterion) {
    let params = CubeParams::default();
    let n = params.n();
    let mask = MaskPolynomial::indicator(n, discrete_cube(&params).iter().map(|g| phi(&params, g)));
    c.bench_function("mask_oracle_all_k", |b| {
        b.iter(|| {
            let mut o = MaskOracle::new(mask.clone());
            (0..n).filter(|&k| o.vanishes(k)).count()
        })
    });
    c.bench_function("closed_form_ft", |b| b.iter(|| closed_form_ft(&params, black_box(12.345)).unwrap()));
    c.bench_function("finite_certificate", |b| b.iter(|| finite_certificate(black_box(&params)).unwrap()));
}

criterion_group!(benches, oracle);
criterion_main!(benches);
