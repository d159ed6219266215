use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use nilbound_bench::{relabelled, SMALL_GROUPS};
use nilbound_core::counting::{count_cyclic_ell, count_quadratic, enumerate_v4};
use nilbound_core::dirichlet::{coefficient_sieve, multi_factor_sum, FactorSpec};
use nilbound_core::extension::is_isomorphic;
use nilbound_core::series::{d_range, optimize_d, DEFAULT_EXHAUSTIVE_CAP};
use nilbound_core::{catalog, BaseFieldData, TableGroup};

fn sieves(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieve");
    g.sample_size(10);
    let spec: FactorSpec = "3:1:4".parse().unwrap();
    for x in [100_000u64, 1_000_000] {
        g.bench_with_input(BenchmarkId::new("coefficients 3:1:4", x), &x, |b, &x| {
            b.iter(|| coefficient_sieve(&spec, black_box(x)).unwrap())
        });
    }
    let pair = ["2:1:1".parse().unwrap(), "3:2:2".parse().unwrap()];
    g.bench_function("two factors to 1e6", |b| b.iter(|| multi_factor_sum(&pair, &[1_000_000]).unwrap()));
    g.bench_function("quadratic count to 1e7", |b| b.iter(|| count_quadratic(&[10_000_000])));
    g.bench_function("cyclic cubic count to 1e7", |b| b.iter(|| count_cyclic_ell(3, &[10_000_000]).unwrap()));
    g.finish();
}

fn refinements(c: &mut Criterion) {
    let q = BaseFieldData::rationals();
    let mut g = c.benchmark_group("refinements");
    for name in SMALL_GROUPS {
        let group = catalog::group(name).unwrap();
        g.bench_function(format!("optimize_d {name}"), |b| b.iter(|| optimize_d(&group, &q).unwrap()));
        g.bench_function(format!("d_range {name}"), |b| b.iter(|| d_range(&group, DEFAULT_EXHAUSTIVE_CAP).unwrap()));
    }
    g.finish();
}

fn isomorphism(c: &mut Criterion) {
    let mut g = c.benchmark_group("isomorphism");
    for name in SMALL_GROUPS {
        let t = TableGroup::from_group(&catalog::group(name).unwrap());
        let h = relabelled(&t);
        g.bench_function(*name, |b| b.iter(|| is_isomorphic(&t, &h).unwrap()));
    }
    g.finish();
}

fn biquadratic(c: &mut Criterion) {
    let mut g = c.benchmark_group("biquadratic");
    g.sample_size(10);
    for x in [100_000u64, 1_000_000] {
        g.bench_with_input(BenchmarkId::new("enumerate", x), &x, |b, &x| b.iter(|| enumerate_v4(black_box(x))));
    }
    g.finish();
}

criterion_group!(benches, sieves, refinements, isomorphism, biquadratic);
criterion_main!(benches);
