use tspga::engine::{evolve_generation, initial_population, RunStreams};
use tspga::{
    brute_force_optimum, run_ga, validate_tour, CrossoverKind, Enumeration, GaParams, InitStrategy, Metric, Point,
    TspInstance,
};

fn pentagon_with_noise() -> TspInstance {
    let pts = [(0.0, 0.0), (40.0, 95.0), (100.0, 10.0), (15.0, 60.0), (90.0, 80.0)];
    TspInstance::new("five", pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), Metric::Rounded).unwrap()
}

#[test]
fn five_city_runs_reach_the_exact_optimum() {
    let inst = pentagon_with_noise();
    let optimum = brute_force_optimum(&inst, 10, Enumeration::SymmetryReduced)
        .unwrap()
        .optimal_length;
    let seeds = 100;
    let hits = (0..seeds)
        .filter(|&seed| {
            let params = GaParams {
                population_size: 30,
                iterations: 200,
                crossover: CrossoverKind::Ox,
                crossover_prob: 0.9,
                mutation_prob: 0.2,
                seed,
                ..GaParams::default()
            };
            let run = run_ga(&inst, &params).unwrap();
            assert!(run.best_length >= optimum);
            run.best_length == optimum
        })
        .count();
    assert!(hits >= 95, "{hits}/{seeds} runs found the optimum {optimum}");
}

#[test]
fn populations_stay_valid_across_generations() {
    let inst = TspInstance::new(
        "grid",
        (0..25).map(|i| Point::new((i % 5) as f64 * 10.0, (i / 5) as f64 * 10.0)).collect(),
        Metric::Real,
    )
    .unwrap();
    for crossover in CrossoverKind::COMPARED.into_iter().chain([CrossoverKind::Uxo]) {
        for init_strategy in [InitStrategy::Random, InitStrategy::MutateFirst, InitStrategy::HeuristicNn] {
            let params = GaParams {
                population_size: 16,
                crossover,
                init_strategy,
                mutation_prob: 0.5,
                seed: 3,
                ..GaParams::default()
            };
            let mut pop = initial_population(&inst, &params).unwrap();
            let mut streams = RunStreams::new(params.seed);
            for g in 1..=40 {
                let next = evolve_generation(&pop, &params, &inst, &mut streams).unwrap();
                assert_eq!(next.len(), 16);
                assert_eq!(next.generation(), g);
                assert!(next.best_length() <= pop.best_length());
                for member in next.members() {
                    assert_eq!(validate_tour(member.order(), 25), Ok(()));
                    assert_eq!(member.length(), Some(inst.tour_length(member.order()).unwrap()));
                }
                pop = next;
            }
        }
    }
}

#[test]
fn run_record_is_consistent() {
    let inst = pentagon_with_noise().with_metric(Metric::Real);
    let params = GaParams {
        population_size: 10,
        iterations: 25,
        seed: 8,
        ..GaParams::default()
    };
    let run = run_ga(&inst, &params).unwrap();
    assert_eq!(run.trace.len(), 26);
    assert_eq!(run.generations_run, 25);
    assert_eq!(run.best_length, *run.trace.last().unwrap());
    assert_eq!(run.best_length, run.trace.iter().copied().fold(f64::INFINITY, f64::min));
    assert_eq!(inst.tour_length(run.best_tour.order()).unwrap(), run.best_length);
}
