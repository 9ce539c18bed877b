use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kapteyn_bench::{alternating_harmonic, first_kind_spec, schott_spec};
use kapteyn_core::catalog::{eval_first_kind, nielsen_rhs, K2Chain, NielsenKind};
use kapteyn_core::specfun::{bessel_j, bessel_j_array, gamma_fn};
use kapteyn_core::summation::{eval_series, eval_series_reduced, wynn_epsilon};
use kapteyn_core::AccuracyBudget;

fn specfun(c: &mut Criterion) {
    let b = AccuracyBudget::default();
    let mut g = c.benchmark_group("specfun");
    g.bench_function("gamma 0.3..170", |bn| {
        bn.iter(|| {
            (1..=567)
                .map(|i| gamma_fn(black_box(i as f64 * 0.3)).unwrap())
                .sum::<f64>()
        })
    });
    for &(order, x) in &[(0.5, 2.0), (10.0, 10.0), (40.0, 36.0), (200.0, 180.0)] {
        g.bench_with_input(
            BenchmarkId::new("bessel_j", format!("{order}@{x}")),
            &(order, x),
            |bn, &(o, x)| bn.iter(|| bessel_j(black_box(o), black_box(x), &b).unwrap()),
        );
    }
    g.bench_function("bessel_j_array 50@10", |bn| {
        bn.iter(|| bessel_j_array(50, black_box(10.0)).unwrap())
    });
    g.finish();
}

fn summation(c: &mut Criterion) {
    let b = AccuracyBudget::default();
    let mut g = c.benchmark_group("summation");
    for z in [0.3, 0.6, 0.9] {
        let spec = schott_spec(z);
        g.bench_with_input(BenchmarkId::new("schott direct", z), &spec, |bn, s| {
            bn.iter(|| eval_series(s, &b).unwrap())
        });
    }
    let spec = schott_spec(0.5);
    g.bench_function("schott reduced 0.5", |bn| {
        bn.iter(|| eval_series_reduced(&spec, &b).unwrap())
    });
    let spec = first_kind_spec(1.5, 0.3);
    g.bench_function("first kind p=1.5 direct", |bn| {
        bn.iter(|| eval_series(&spec, &b).unwrap())
    });
    let partials = alternating_harmonic(40);
    g.bench_function("wynn 40", |bn| {
        bn.iter(|| wynn_epsilon(black_box(&partials)).unwrap())
    });
    g.finish();
}

fn closed_forms(c: &mut Criterion) {
    let b = AccuracyBudget::default();
    let mut g = c.benchmark_group("closed_forms");
    g.bench_function("first kind p=1.5 power series", |bn| {
        bn.iter(|| eval_first_kind(black_box(1.5), black_box(0.3), &b).unwrap())
    });
    g.bench_function("nielsen even x=0.45", |bn| {
        bn.iter(|| nielsen_rhs(NielsenKind::Even, black_box(0.25), black_box(0.45), &b).unwrap())
    });
    for q in [4u32, 8] {
        g.bench_with_input(BenchmarkId::new("k2 chain", q), &q, |bn, &q| {
            bn.iter(|| K2Chain::new().get(q).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, specfun, summation, closed_forms);
criterion_main!(benches);
