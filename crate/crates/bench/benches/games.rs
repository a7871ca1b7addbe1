use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use zombies::exact::{capture_value_table, SolveOptions};
use zombies::graph::{cycle, hypercube, projective_incidence, torus};
use zombies::montecarlo::{estimate_sk, EstimateOptions};
use zombies::strategies::GreedyEvade;

fn solver(c: &mut Criterion) {
    let q3 = hypercube(3).unwrap();
    let c12 = cycle(12).unwrap();
    c.bench_function("solve Q3 k=2", |b| {
        b.iter(|| capture_value_table(black_box(&q3), 2, SolveOptions::default()).unwrap())
    });
    c.bench_function("solve C12 k=3", |b| {
        b.iter(|| capture_value_table(black_box(&c12), 3, SolveOptions::default()).unwrap())
    });
}

fn simulation(c: &mut Criterion) {
    let g = cycle(20).unwrap();
    let strat = GreedyEvade::default();
    let opts = EstimateOptions::new(&g, 2_000, 1);
    c.bench_function("simulate C20 k=2 x2000", |b| {
        b.iter(|| estimate_sk(black_box(&g), 2, &strat, &opts).unwrap())
    });
}

fn generation(c: &mut Criterion) {
    c.bench_function("generate torus(64)", |b| {
        b.iter(|| torus(black_box(64)).unwrap())
    });
    c.bench_function("generate projective(7)", |b| {
        b.iter(|| projective_incidence(black_box(7)).unwrap())
    });
}

criterion_group!(benches, solver, simulation, generation);
criterion_main!(benches);
