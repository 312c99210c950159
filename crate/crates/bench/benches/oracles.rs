use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fairassort::harness::{gen_synthetic, instance_from_ratings, stand_in_ratings, RatingsSpec, SyntheticSpec, STAND_IN_GAMMA};
use fairassort::solver::restricted_master;
use fairassort::{oracle_dispatch, Assortment, DualMatrix, Instance, OracleMethod};
use std::hint::black_box;

/// Duals of the singleton master at `delta = 0`, a typical first pricing point.
fn first_duals(inst: &Instance) -> DualMatrix {
    let cols: Vec<Assortment> = (0..inst.n()).map(Assortment::singleton).collect();
    restricted_master(inst, &cols).expect("master solves").1.z
}

fn price_sensitive(c: &mut Criterion) {
    let inst = gen_synthetic(&SyntheticSpec::price_sensitive(-1.0, 1, 3)).unwrap().remove(0).with_delta(0.0);
    let z = first_duals(&inst);
    let mut g = c.benchmark_group("oracle/price-sensitive");
    for (name, m) in [("half", OracleMethod::Half), ("ptas-0.25", OracleMethod::Ptas(0.25)), ("brute", OracleMethod::Brute)] {
        g.bench_function(name, |b| b.iter(|| oracle_dispatch(black_box(&inst), black_box(&z), m).unwrap()));
    }
    g.finish();
}

fn uniform_revenue(c: &mut Criterion) {
    let spec = RatingsSpec { delimiter: Some('\t'), ..Default::default() };
    let inst = instance_from_ratings(&stand_in_ratings(30, STAND_IN_GAMMA, 1), &spec, None).unwrap();
    let z = first_duals(&inst);
    let mut g = c.benchmark_group("oracle/uniform-revenue");
    g.bench_function("half", |b| b.iter(|| oracle_dispatch(&inst, black_box(&z), OracleMethod::Half).unwrap()));
    for eps in [0.1, 0.2, 0.5] {
        g.bench_with_input(BenchmarkId::new("fptas", eps), &eps, |b, &e| {
            b.iter(|| oracle_dispatch(&inst, black_box(&z), OracleMethod::Fptas(e)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, price_sensitive, uniform_revenue);
criterion_main!(benches);
