//! Genetic algorithm for the symmetric Euclidean TSP.
//!
//! Tours use the path representation (a permutation of city indices). The
//! crate provides six permutation crossovers (uniform, CX, PMX, UPMX, NWOX,
//! OX), reverse sequence mutation, inverted-fitness roulette selection, an
//! elitist generational loop with seeded, reproducible runs, an exhaustive
//! solver for small instances, and a runner that compares operators on shared
//! initial populations.
//!
//! ```
//! use tspga::{run_ga, GaParams, Point, TspInstance, Metric};
//!
//! let cities = (0..8)
//!     .map(|i| {
//!         let a = i as f64 * std::f64::consts::TAU / 8.0;
//!         Point::new(a.cos() * 10.0, a.sin() * 10.0)
//!     })
//!     .collect();
//! let instance = TspInstance::new("octagon", cities, Metric::Real).unwrap();
//! let params = GaParams { population_size: 20, iterations: 200, seed: 1, ..GaParams::default() };
//! let run = run_ga(&instance, &params).unwrap();
//! assert!(run.trace.windows(2).all(|w| w[1] <= w[0]));
//! ```

pub mod engine;
pub mod error;
pub mod experiment;
pub mod instance;
pub mod operators;
pub mod oracle;
pub mod params;
pub mod tour;

pub use engine::{
    derive_seed, evolve_generation, init_population, initial_population, run_ga, run_ga_from,
    Population, RunRecord, RunStreams,
};
pub use error::{Error, Result};
pub use experiment::{
    export_report, run_comparison, summarize, BenchReport, ExperimentPlan, ExportFormat,
    OperatorReport, Summary,
};
pub use instance::{euclid_distance, parse_tsplib, parse_tsplib_tour, Metric, Point, TspInstance};
pub use operators::{CrossoverKind, CutPoints, MutationKind, SelectionWeights};
pub use oracle::{brute_force_optimum, Enumeration, ExactResult};
pub use params::{GaParams, InitStrategy};
pub use tour::{validate_tour, Tour, TourViolation};

/// Path of the bundled Berlin52 TSPLIB instance.
pub const BERLIN52_TSP: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/berlin52.tsp");
/// Path of the bundled Berlin52 optimal tour.
pub const BERLIN52_OPT_TOUR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/berlin52.opt.tour");
