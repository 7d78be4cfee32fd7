//! GA run parameters and their plain-text `key = value` form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{CrossoverKind, MutationKind};

/// How the generation-0 population is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitStrategy {
    /// Independent uniform random permutations.
    #[default]
    Random,
    /// One random tour plus RSM mutants of it.
    MutateFirst,
    /// A nearest-neighbour tour from city 0 plus RSM mutants of it.
    HeuristicNn,
}

impl FromStr for InitStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "random" => Ok(InitStrategy::Random),
            "mutate-first" => Ok(InitStrategy::MutateFirst),
            "heuristic-nn" => Ok(InitStrategy::HeuristicNn),
            other => Err(Error::param(
                "init",
                format!("expected random, mutate-first or heuristic-nn, got `{other}`"),
            )),
        }
    }
}

impl fmt::Display for InitStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitStrategy::Random => "random",
            InitStrategy::MutateFirst => "mutate-first",
            InitStrategy::HeuristicNn => "heuristic-nn",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub population_size: usize,
    pub crossover: CrossoverKind,
    pub crossover_prob: f64,
    pub mutation: MutationKind,
    pub mutation_prob: f64,
    pub iterations: usize,
    pub init_strategy: InitStrategy,
    pub seed: u64,
}

/// Keys accepted by [`GaParams::set`], in the order they are written out.
pub const CONFIG_KEYS: [&str; 8] = [
    "population",
    "crossover",
    "px",
    "mutation",
    "pm",
    "iterations",
    "init",
    "seed",
];

impl Default for GaParams {
    fn default() -> Self {
        Self {
            population_size: 100,
            crossover: CrossoverKind::Ox,
            crossover_prob: 0.9,
            mutation: MutationKind::Rsm,
            mutation_prob: 0.1,
            iterations: 5000,
            init_strategy: InitStrategy::Random,
            seed: 0,
        }
    }
}

fn parse_value<T: FromStr>(key: &'static str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::param(key, format!("cannot parse `{}`", value.trim())))
}

fn probability(key: &'static str, value: &str) -> Result<f64> {
    let p: f64 = parse_value(key, value)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(key, format!("{p} is not in [0, 1]")));
    }
    Ok(p)
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::param("population", "must be at least 2"));
        }
        for (key, p) in [("px", self.crossover_prob), ("pm", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::param(key, format!("{p} is not in [0, 1]")));
            }
        }
        if let CrossoverKind::Upmx { threshold } = self.crossover {
            CrossoverKind::upmx(threshold)?;
        }
        Ok(())
    }

    /// Sets one parameter from its config key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "population" => {
                let n: usize = parse_value("population", value)?;
                if n < 2 {
                    return Err(Error::param("population", "must be at least 2"));
                }
                self.population_size = n;
            }
            "crossover" => self.crossover = value.parse()?,
            "px" => self.crossover_prob = probability("px", value)?,
            "mutation" => self.mutation = value.parse()?,
            "pm" => self.mutation_prob = probability("pm", value)?,
            "iterations" => self.iterations = parse_value("iterations", value)?,
            "init" => self.init_strategy = value.parse()?,
            "seed" => self.seed = parse_value("seed", value)?,
            other => {
                return Err(Error::param(
                    "config",
                    format!(
                        "unknown key `{other}` (expected one of {})",
                        CONFIG_KEYS.join(", ")
                    ),
                ))
            }
        }
        Ok(())
    }

    /// Applies `key = value` lines over `self`. Blank lines and `#` comments
    /// are skipped.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn from_config(text: &str) -> Result<Self> {
        let mut params = Self::default();
        params.apply_config(text)?;
        Ok(params)
    }

    pub fn to_config(&self) -> String {
        format!(
            "population = {}\ncrossover = {}\npx = {}\nmutation = {}\npm = {}\niterations = {}\ninit = {}\nseed = {}\n",
            self.population_size,
            self.crossover,
            self.crossover_prob,
            self.mutation,
            self.mutation_prob,
            self.iterations,
            self.init_strategy,
            self.seed,
        )
    }
}
