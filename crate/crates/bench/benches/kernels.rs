use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rug::Float;
use zl_core::coefficients::CoefficientTable;
use zl_core::laguerre::{eval_recurrence, LaguerreParams};
use zl_core::oracle::zeta_em;
use zl_core::stieltjes::{stieltjes_em_batch, BatchTarget};
use zl_core::{zeta, ComplexPoint, PrecisionContext};

fn ctx(bits: u32, tol: f64) -> PrecisionContext {
    PrecisionContext::new(bits, tol).unwrap()
}

fn bench_stieltjes(c: &mut Criterion) {
    let cx = ctx(192, 1e-30);
    let mut g = c.benchmark_group("stieltjes_batch");
    g.sample_size(10);
    for k in [16, 64] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| stieltjes_em_batch(k, BatchTarget::absolute(1e-30), &cx).unwrap())
        });
    }
    g.finish();
}

fn bench_coefficients(c: &mut Criterion) {
    let cx = ctx(192, 1e-12);
    let mut g = c.benchmark_group("coefficient_plan");
    g.sample_size(10);
    for n in [64, 512] {
        g.bench_with_input(BenchmarkId::new("m3", n), &n, |b, &n| {
            b.iter(|| CoefficientTable::plan(3, n, &cx).unwrap())
        });
    }
    g.finish();
}

fn bench_zeta(c: &mut Criterion) {
    let cx = ctx(192, 1e-12);
    let s = ComplexPoint::new(1.5, 5.0).unwrap();
    let table = CoefficientTable::plan(0, 1200, &cx).unwrap();
    let mut g = c.benchmark_group("zeta");
    g.sample_size(20);
    g.bench_function("em_oracle", |b| b.iter(|| zeta_em(black_box(s), &cx).unwrap()));
    g.bench_function("series_prebuilt_table", |b| {
        b.iter(|| zeta::zeta_derivative(black_box(s), 0, &table, 1e-12, &cx).unwrap())
    });
    g.finish();
}

fn bench_laguerre(c: &mut Criterion) {
    let cx = ctx(192, 1e-30);
    let x = Float::with_val(192, 37.5);
    c.bench_function("laguerre_recurrence_n200_m2", |b| {
        b.iter(|| eval_recurrence(LaguerreParams::new(200, 2), black_box(&x), &cx).unwrap())
    });
}

criterion_group!(benches, bench_stieltjes, bench_coefficients, bench_zeta, bench_laguerre);
criterion_main!(benches);
