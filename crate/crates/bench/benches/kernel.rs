use std::hint::black_box;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, Criterion};
use homsplit::axioms::{self, Sq15Reading};
use homsplit::corpus::{verify_all, Corpus, VerifyAllOptions};
use homsplit::operators::{solve_operators_grid, OperatorContext, OperatorKind, VerifyOptions};
use homsplit::{bundle_specialize, constructions, parse, sample, Bindings, RepresentationBundle};

fn corpus() -> Corpus {
    Corpus::open(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")).unwrap()
}

fn polynomials(c: &mut Criterion) {
    let p = parse("(a + 2*b - 1/3)^3").unwrap();
    let q = parse("a*b^2 - eta + 7/5").unwrap();
    c.bench_function("poly/mul", |b| b.iter(|| black_box(&p) * black_box(&q)));
    let text = p.to_string();
    c.bench_function("poly/parse", |b| b.iter(|| parse(black_box(&text)).unwrap()));
}

fn axiom_checks(c: &mut Criterion) {
    let corpus = corpus();
    let d8 = corpus.load_instance("dim3/D8.json").unwrap();
    c.bench_function("check_quadri/dim3.D8 symbolic", |b| {
        b.iter(|| axioms::check_quadri(black_box(&d8)).unwrap())
    });
    let rep = RepresentationBundle::adjoint(&sample::integration_dendriform(3, 1)).unwrap();
    let hemi = constructions::hemi_semidirect(&rep).unwrap();
    c.bench_function("check_quadri/hemi dim 6", |b| {
        b.iter(|| axioms::check_quadri(black_box(&hemi)).unwrap())
    });
    let action = homsplit::ActionBundle::adjoint(&sample::integration_dendriform(2, 1)).unwrap();
    let t = homsplit::LinearMap::zero(2, 2);
    let six = constructions::homomorphic_averaging_induced_six(&action, &t).unwrap();
    c.bench_function("check_six/dim 2", |b| {
        b.iter(|| axioms::check_six(black_box(&six), Sq15Reading::Literal).unwrap())
    });
}

fn solver(c: &mut Criterion) {
    let corpus = corpus();
    let d1 = corpus.load_instance("dim2/D1.json").unwrap();
    let mut bind = Bindings::new();
    bind.insert("a".into(), homsplit::polyring::rat(0, 1));
    let ctx = OperatorContext::Algebra(bundle_specialize(&d1, &bind).unwrap());
    let grid = sample::int_grid(-2, 2);
    c.bench_function("solve_operators_grid/dim2.D1 a=0", |b| {
        b.iter(|| solve_operators_grid(&ctx, OperatorKind::AveragingQuadri, &grid, &VerifyOptions::default()).unwrap())
    });
}

fn corpus_run(c: &mut Criterion) {
    let corpus = corpus();
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function("verify_all", |b| {
        b.iter(|| verify_all(&corpus, &VerifyAllOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, polynomials, axiom_checks, solver, corpus_run);
criterion_main!(benches);
