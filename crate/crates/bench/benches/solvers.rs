use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fairassort::harness::{gen_synthetic, SyntheticSpec};
use fairassort::solver::EllipsoidConfig;
use fairassort::{solve, OracleMethod, SolverConfig, SolverMethod};
use std::hint::black_box;

fn colgen(c: &mut Criterion) {
    let base = gen_synthetic(&SyntheticSpec::price_sensitive(-1.0, 1, 3)).unwrap().remove(0);
    let cfg = SolverConfig { contract_cap: 0, ..SolverConfig::default().with_oracle(OracleMethod::Half) };
    let mut g = c.benchmark_group("colgen/price-sensitive");
    g.sample_size(20);
    for delta in [0.0, 0.5, 1.0] {
        let inst = base.with_delta(delta);
        g.bench_with_input(BenchmarkId::from_parameter(delta), &inst, |b, inst| {
            b.iter(|| solve(black_box(inst), &cfg).unwrap())
        });
    }
    g.finish();
}

fn ellipsoid(c: &mut Criterion) {
    let mut spec = SyntheticSpec::price_sensitive(-1.0, 1, 5);
    spec.n = 3;
    spec.k = 2;
    let inst = gen_synthetic(&spec).unwrap().remove(0).with_delta(0.1);
    let cfg = SolverConfig {
        method: SolverMethod::Ellipsoid,
        oracle: OracleMethod::Brute,
        contract_cap: 0,
        ellipsoid: EllipsoidConfig { t_max: 2000, ..Default::default() },
        ..Default::default()
    };
    let mut g = c.benchmark_group("ellipsoid");
    g.sample_size(10);
    g.bench_function("n3-brute", |b| b.iter(|| solve(black_box(&inst), &cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, colgen, ellipsoid);
criterion_main!(benches);
