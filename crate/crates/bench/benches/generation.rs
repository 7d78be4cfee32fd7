use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tspga::engine::{evolve_generation, initial_population, RunStreams};
use tspga::{
    brute_force_optimum, CrossoverKind, Enumeration, GaParams, Metric, Point, TspInstance,
    BERLIN52_TSP,
};

fn generation(c: &mut Criterion) {
    let instance = TspInstance::load(BERLIN52_TSP).unwrap();
    let mut group = c.benchmark_group("generation/berlin52");
    for kind in CrossoverKind::COMPARED {
        let params = GaParams {
            crossover: kind,
            seed: 1,
            ..GaParams::default()
        };
        let pop = initial_population(&instance, &params).unwrap();
        group.bench_function(BenchmarkId::from_parameter(kind.name()), |b| {
            let mut streams = RunStreams::new(params.seed);
            b.iter(|| evolve_generation(black_box(&pop), &params, &instance, &mut streams).unwrap())
        });
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    for n in [7, 9] {
        let cities = (0..n)
            .map(|i| {
                let a = i as f64 * 2.399_963;
                Point::new(
                    500.0 + 40.0 * i as f64 * a.cos(),
                    500.0 + 40.0 * i as f64 * a.sin(),
                )
            })
            .collect();
        let instance = TspInstance::new("spiral", cities, Metric::Rounded).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &instance, |b, inst| {
            b.iter(|| brute_force_optimum(inst, n, Enumeration::SymmetryReduced).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, generation, exhaustive);
criterion_main!(benches);
