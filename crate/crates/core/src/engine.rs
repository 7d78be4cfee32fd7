//! The generational loop: initial population, roulette selection, crossover
//! with probability `px`, RSM with probability `pm`, and a single elite.
//!
//! # Randomness
//!
//! A run is a pure function of its instance and [`GaParams`]. The seed keys a
//! ChaCha8 generator and each kind of random decision reads its own ChaCha
//! stream of that key (see [`RunStreams`]), so consuming more or fewer
//! numbers for one purpose never shifts the numbers seen by another. In
//! particular the initial population depends only on the seed, which is what
//! lets the comparison runner share populations between operators.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::TspInstance;
use crate::operators::{
    roulette_select, roulette_weights, rsm_mutation, CutPoints, SelectionWeights,
};
use crate::params::{GaParams, InitStrategy};
use crate::tour::Tour;

const STREAM_INIT: u64 = 1;
const STREAM_SELECTION: u64 = 2;
const STREAM_CROSSOVER: u64 = 3;
const STREAM_MUTATION: u64 = 4;
const STREAM_DECISION: u64 = 5;

/// Independent random streams for one run, all keyed by the same seed.
#[derive(Debug, Clone)]
pub struct RunStreams {
    /// Generation-0 population.
    pub init: ChaCha8Rng,
    /// Roulette spins.
    pub selection: ChaCha8Rng,
    /// Cut points, masks and per-position draws handed to crossovers.
    pub crossover: ChaCha8Rng,
    /// RSM cut points.
    pub mutation: ChaCha8Rng,
    /// The `px` / `pm` coin flips.
    pub decision: ChaCha8Rng,
}

impl RunStreams {
    pub fn new(seed: u64) -> Self {
        let stream = |id| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(id);
            rng
        };
        Self {
            init: stream(STREAM_INIT),
            selection: stream(STREAM_SELECTION),
            crossover: stream(STREAM_CROSSOVER),
            mutation: stream(STREAM_MUTATION),
            decision: stream(STREAM_DECISION),
        }
    }
}

/// SplitMix64 finaliser over `(master, index)`; used to give each repeated
/// run its own seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A fixed-size set of evaluated tours.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Population {
    members: Vec<Tour>,
    generation: usize,
}

impl Population {
    /// Evaluates every member against `instance`.
    pub fn new(mut members: Vec<Tour>, instance: &TspInstance) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Empty("population"));
        }
        for m in &mut members {
            m.evaluate(instance)?;
        }
        Ok(Self {
            members,
            generation: 0,
        })
    }

    pub fn members(&self) -> &[Tour] {
        &self.members
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.members.iter().map(fitness).collect()
    }

    /// Index of the shortest member; ties go to the lowest index.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, m) in self.members.iter().enumerate().skip(1) {
            if fitness(m) < fitness(&self.members[best]) {
                best = i;
            }
        }
        best
    }

    pub fn best(&self) -> &Tour {
        &self.members[self.best_index()]
    }

    pub fn best_length(&self) -> f64 {
        fitness(self.best())
    }
}

fn fitness(t: &Tour) -> f64 {
    t.length().expect("population members are evaluated")
}

/// Greedy tour from `start`: always move to the closest unvisited city
/// (lowest index on ties).
pub fn nearest_neighbor_tour(instance: &TspInstance, start: usize) -> Tour {
    let n = instance.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut current = start;
    visited[current] = true;
    order.push(current);
    while order.len() < n {
        let next = (0..n)
            .filter(|&c| !visited[c])
            .min_by(|&a, &b| {
                instance
                    .distance(current, a)
                    .total_cmp(&instance.distance(current, b))
            })
            .expect("unvisited city remains");
        visited[next] = true;
        order.push(next);
        current = next;
    }
    Tour::from_order_unchecked(order)
}

pub fn random_tour<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tour {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Tour::from_order_unchecked(order)
}

fn mutants<R: Rng + ?Sized>(progenitor: Tour, size: usize, rng: &mut R) -> Result<Vec<Tour>> {
    let mut members = Vec::with_capacity(size);
    for _ in 1..size {
        members.push(rsm_mutation(
            &progenitor,
            CutPoints::sample(progenitor.len(), rng)?,
        )?);
    }
    members.insert(0, progenitor);
    Ok(members)
}

/// Builds a generation-0 population of exactly `size` evaluated tours.
pub fn init_population<R: Rng + ?Sized>(
    instance: &TspInstance,
    strategy: InitStrategy,
    size: usize,
    rng: &mut R,
) -> Result<Population> {
    if size < 2 {
        return Err(Error::param("population", "must be at least 2"));
    }
    let n = instance.len();
    let members = match strategy {
        InitStrategy::Random => (0..size).map(|_| random_tour(n, rng)).collect(),
        InitStrategy::MutateFirst => {
            let first = random_tour(n, rng);
            mutants(first, size, rng)?
        }
        InitStrategy::HeuristicNn => mutants(nearest_neighbor_tour(instance, 0), size, rng)?,
    };
    Population::new(members, instance)
}

/// Produces the next generation: the current best survives unchanged and the
/// remaining slots are filled with (possibly recombined, possibly mutated)
/// children of roulette-selected parents.
pub fn evolve_generation(
    pop: &Population,
    params: &GaParams,
    instance: &TspInstance,
    streams: &mut RunStreams,
) -> Result<Population> {
    if pop.is_empty() {
        return Err(Error::Empty("population"));
    }
    let size = pop.len();
    let mut next = Vec::with_capacity(size);
    next.push(pop.best().clone());
    if size == 1 {
        return Ok(Population {
            members: next,
            generation: pop.generation + 1,
        });
    }

    let lengths = pop.lengths();
    // Every tour has length zero only when all cities coincide.
    let weights = if lengths.iter().all(|&l| l > 0.0) {
        roulette_weights(&lengths)?
    } else {
        SelectionWeights::uniform(size)?
    };

    while next.len() < size {
        let i = roulette_select(&weights, streams.selection.random());
        let j = roulette_select(&weights, streams.selection.random());
        let (p1, p2) = (&pop.members[i], &pop.members[j]);
        let (c1, c2) = if streams.decision.random::<f64>() < params.crossover_prob {
            params.crossover.apply(p1, p2, &mut streams.crossover)?
        } else {
            (p1.clone(), p2.clone())
        };
        for mut child in [c1, c2] {
            if next.len() == size {
                break;
            }
            if streams.decision.random::<f64>() < params.mutation_prob {
                let cuts = CutPoints::sample(child.len(), &mut streams.mutation)?;
                child = rsm_mutation(&child, cuts)?;
            }
            if child.length().is_none() {
                child.evaluate(instance)?;
            }
            next.push(child);
        }
    }
    Ok(Population {
        members: next,
        generation: pop.generation + 1,
    })
}

/// Outcome of one GA run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub best_tour: Tour,
    pub best_length: f64,
    /// Best length of generation 0, 1, ..., `generations_run`.
    pub trace: Vec<f64>,
    pub seed: u64,
    pub generations_run: usize,
    pub wall_time: Duration,
}

/// The generation-0 population a run with `params` starts from.
pub fn initial_population(instance: &TspInstance, params: &GaParams) -> Result<Population> {
    params.validate()?;
    let mut streams = RunStreams::new(params.seed);
    init_population(
        instance,
        params.init_strategy,
        params.population_size,
        &mut streams.init,
    )
}

/// Runs `params.iterations` generations from a given starting population.
///
/// With the population returned by [`initial_population`] this is exactly
/// [`run_ga`].
pub fn run_ga_from(
    instance: &TspInstance,
    params: &GaParams,
    mut pop: Population,
) -> Result<RunRecord> {
    params.validate()?;
    let start = Instant::now();
    let mut streams = RunStreams::new(params.seed);
    let mut trace = Vec::with_capacity(params.iterations + 1);
    trace.push(pop.best_length());
    for _ in 0..params.iterations {
        pop = evolve_generation(&pop, params, instance, &mut streams)?;
        trace.push(pop.best_length());
    }
    let best_tour = pop.best().clone();
    Ok(RunRecord {
        best_length: fitness(&best_tour),
        best_tour,
        trace,
        seed: params.seed,
        generations_run: params.iterations,
        wall_time: start.elapsed(),
    })
}

pub fn run_ga(instance: &TspInstance, params: &GaParams) -> Result<RunRecord> {
    let pop = initial_population(instance, params)?;
    run_ga_from(instance, params, pop)
}
