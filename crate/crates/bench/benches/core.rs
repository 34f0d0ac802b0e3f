use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use hopf_cell::bigcell::datum_preset;
use hopf_cell::deform::{DeformationCtx, GroupBicharacter};
use hopf_cell::grothendieck::{FusionElement, FusionRing};
use hopf_cell::hopfalg::preset;
use hopf_cell::scalars::FieldCtx;
use hopf_cell::weight::WeightWord;

fn normal_form(c: &mut Criterion) {
    let h = preset("slq2").unwrap();
    let x = h.parse("d^3*a^2*c*b").unwrap();
    let y = h.parse("a*d*b^2 + c*d").unwrap();
    c.bench_function("slq2 product", |b| b.iter(|| h.mul(black_box(&x), black_box(&y))));
    c.bench_function("slq2 coproduct", |b| b.iter(|| h.delta(black_box(&x))));
}

fn big_cell(c: &mut Criterion) {
    let d = datum_preset("slq2").unwrap();
    c.bench_function("slq2 graded injectivity deg 3", |b| {
        b.iter(|| d.graded_injectivity(black_box(3)).unwrap())
    });
    let lam = d.lambda.pow(&WeightWord::generator(0), 3);
    c.bench_function("slq2 induce t^3", |b| b.iter(|| d.induce(black_box(&lam), 4)));
}

fn fusion(c: &mut Criterion) {
    let r = FusionRing::root_of_unity(5).unwrap();
    let (x, y) = (FusionElement::sl2(&r, 13), FusionElement::sl2(&r, 9));
    c.bench_function("fusion N=5 L(13)L(9)", |b| b.iter(|| black_box(&x).fuse(black_box(&y)).unwrap()));
}

fn deformation(c: &mut Criterion) {
    let d = datum_preset("slq2(x)slq2").unwrap();
    let p = FieldCtx::RationalFunction.from_int(2);
    let sigma = Arc::new(GroupBicharacter::new(vec![vec![0, 1], vec![0, 0]], p).unwrap());
    let ctx = DeformationCtx::for_datum(&d, sigma).unwrap();
    let x = d.h.parse("a*b_2*c").unwrap();
    let y = d.h.parse("d_2*b").unwrap();
    c.bench_function("deformed product", |b| b.iter(|| ctx.mul(black_box(&x), black_box(&y))));
    c.bench_function("deformed product, full enumeration", |b| {
        b.iter(|| ctx.mul_naive(black_box(&x), black_box(&y)))
    });
}

criterion_group!(benches, normal_form, big_cell, fusion, deformation);
criterion_main!(benches);
