use criterion::{criterion_group, criterion_main, Criterion};
use ore_kex::protocols::kex::run_exchange;
use ore_kex::protocols::three_pass::three_pass;
use ore_kex::OreRing;
use ore_kex_bench::{operand, parameters, rng};

fn exchange(c: &mut Criterion) {
    let ring = OreRing::f125_skew2();
    let mut group = c.benchmark_group("exchange");
    group.sample_size(10);
    for nu in [5, 10] {
        let params = parameters(&ring, 50, 5, nu, 1);
        let mut r = rng(2);
        group.bench_function(format!("f125_50_5_{nu}"), |bench| {
            bench.iter(|| run_exchange(&params, &mut r).unwrap())
        });
    }
    group.finish();
}

fn three_pass_transport(c: &mut Criterion) {
    let ring = OreRing::f125_skew2();
    let params = parameters(&ring, 20, 5, 5, 3);
    let secret = operand(&ring, 20, 60, 4);
    let mut r = rng(5);
    let mut group = c.benchmark_group("three_pass");
    group.sample_size(10);
    group.bench_function("f125_20_5_5", |bench| bench.iter(|| three_pass(&params, &secret, &mut r).unwrap()));
    group.finish();
}

criterion_group!(benches, exchange, three_pass_transport);
criterion_main!(benches);
