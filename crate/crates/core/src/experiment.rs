//! Operator comparison on shared initial populations.
//!
//! `population_count` seeds are derived from the master seed. Each seed fixes
//! one generation-0 population, built once, and every operator (and every
//! `px`/`pm` cell of an optional sweep) starts a run from a copy of it using
//! the same seed for its remaining random streams. Runs are independent and
//! are executed on a worker pool; results are ordered by (cell, population).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{derive_seed, initial_population, run_ga_from, Population, RunRecord};
use crate::error::{Error, Result};
use crate::instance::TspInstance;
use crate::operators::CrossoverKind;
use crate::params::GaParams;

/// Probability grid used for `px`/`pm` sweeps: 1, 0.9, ..., 0.
pub const PROBABILITY_GRID: [f64; 11] = [1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.0];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub operators: Vec<CrossoverKind>,
    /// Everything but the crossover kind; `seed` is ignored in favour of
    /// per-population seeds derived from `master_seed`.
    pub base: GaParams,
    pub population_count: usize,
    pub master_seed: u64,
    /// Optional `px` values to sweep; `None` uses `base.crossover_prob`.
    pub px_grid: Option<Vec<f64>>,
    /// Optional `pm` values to sweep; `None` uses `base.mutation_prob`.
    pub pm_grid: Option<Vec<f64>>,
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
}

impl ExperimentPlan {
    pub fn new(
        operators: Vec<CrossoverKind>,
        base: GaParams,
        population_count: usize,
        master_seed: u64,
    ) -> Self {
        Self {
            operators,
            base,
            population_count,
            master_seed,
            px_grid: None,
            pm_grid: None,
            workers: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.operators.is_empty() {
            return Err(Error::param(
                "operators",
                "at least one operator is required",
            ));
        }
        if self.population_count == 0 {
            return Err(Error::param("populations", "must be at least 1"));
        }
        for (key, grid) in [("px", &self.px_grid), ("pm", &self.pm_grid)] {
            if let Some(grid) = grid {
                if grid.is_empty() || grid.iter().any(|p| !(0.0..=1.0).contains(p)) {
                    return Err(Error::param(key, "sweep values must be in [0, 1]"));
                }
            }
        }
        self.base.validate()
    }

    /// Seed of population `index`; shared by every operator.
    pub fn population_seed(&self, index: usize) -> u64 {
        derive_seed(self.master_seed, index as u64)
    }

    fn cells(&self) -> Vec<(CrossoverKind, f64, f64)> {
        let pxs = self
            .px_grid
            .clone()
            .unwrap_or_else(|| vec![self.base.crossover_prob]);
        let pms = self
            .pm_grid
            .clone()
            .unwrap_or_else(|| vec![self.base.mutation_prob]);
        let mut cells = Vec::new();
        for &op in &self.operators {
            for &px in &pxs {
                for &pm in &pms {
                    cells.push((op, px, pm));
                }
            }
        }
        cells
    }

    fn swept(&self) -> bool {
        self.px_grid.is_some() || self.pm_grid.is_some()
    }
}

/// Aggregate statistics over the final bests of a set of runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub best: f64,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for a single run.
    pub std: f64,
    /// Generation-wise mean of the best-length traces.
    pub mean_trace: Vec<f64>,
}

/// Min, mean and sample standard deviation of the final bests, plus the
/// elementwise mean trace (over the shortest trace length).
pub fn summarize(records: &[RunRecord]) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::Empty("no run records to summarize"));
    }
    let bests: Vec<f64> = records.iter().map(|r| r.best_length).collect();
    let (best, mean, std) = final_stats(&bests);
    let len = records.iter().map(|r| r.trace.len()).min().unwrap_or(0);
    let k = records.len() as f64;
    let mean_trace = (0..len)
        .map(|g| records.iter().map(|r| r.trace[g]).sum::<f64>() / k)
        .collect();
    Ok(Summary {
        best,
        mean,
        std,
        mean_trace,
    })
}

/// `(min, mean, sample std)` of a nonempty list.
pub fn final_stats(values: &[f64]) -> (f64, f64, f64) {
    let k = values.len() as f64;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = values.iter().sum::<f64>() / k;
    let std = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
    } else {
        0.0
    };
    (min, mean, std)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorReport {
    /// Display label: the operator name, suffixed with `[px=..;pm=..]` in sweeps.
    pub operator: String,
    pub crossover: CrossoverKind,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    /// One record per shared population, in population order.
    pub records: Vec<RunRecord>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub instance: String,
    pub master_seed: u64,
    pub population_count: usize,
    pub base: GaParams,
    pub operators: Vec<OperatorReport>,
}

impl BenchReport {
    pub fn operator(&self, label: &str) -> Option<&OperatorReport> {
        self.operators.iter().find(|o| o.operator == label)
    }
}

/// The generation-0 populations of a plan, one per seed.
pub fn shared_populations(
    instance: &TspInstance,
    plan: &ExperimentPlan,
) -> Result<Vec<Population>> {
    (0..plan.population_count)
        .map(|i| {
            let params = GaParams {
                seed: plan.population_seed(i),
                ..plan.base.clone()
            };
            initial_population(instance, &params)
        })
        .collect()
}

pub fn run_comparison(instance: &TspInstance, plan: &ExperimentPlan) -> Result<BenchReport> {
    plan.validate()?;
    let populations = shared_populations(instance, plan)?;
    let cells = plan.cells();

    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..plan.population_count).map(move |p| (c, p)))
        .collect();
    let run = |&(c, p): &(usize, usize)| -> Result<RunRecord> {
        let (crossover, px, pm) = cells[c];
        let params = GaParams {
            crossover,
            crossover_prob: px,
            mutation_prob: pm,
            seed: plan.population_seed(p),
            ..plan.base.clone()
        };
        run_ga_from(instance, &params, populations[p].clone())
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.workers)
        .build()
        .map_err(|e| Error::param("workers", e.to_string()))?;
    let mut results = pool
        .install(|| jobs.par_iter().map(run).collect::<Result<Vec<_>>>())?
        .into_iter();

    let mut operators = Vec::with_capacity(cells.len());
    for (crossover, px, pm) in cells {
        let records: Vec<RunRecord> = results.by_ref().take(plan.population_count).collect();
        let operator = if plan.swept() {
            format!("{crossover}[px={px};pm={pm}]")
        } else {
            crossover.to_string()
        };
        operators.push(OperatorReport {
            operator,
            crossover,
            crossover_prob: px,
            mutation_prob: pm,
            summary: summarize(&records)?,
            records,
        });
    }
    Ok(BenchReport {
        instance: instance.name().to_string(),
        master_seed: plan.master_seed,
        population_count: plan.population_count,
        base: plan.base.clone(),
        operators,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::param(
                "format",
                format!("expected csv or json, got `{other}`"),
            )),
        }
    }
}

/// One exported file: a suggested file name and its contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub file_name: &'static str,
    pub bytes: Vec<u8>,
}

pub const SUMMARY_HEADER: &str = "operator,best,mean,std";
pub const TRACE_HEADER: &str = "operator,population,generation,best_length";

/// `operator,best,mean,std`, one row per operator. Floats use the shortest
/// representation that parses back to the same value.
pub fn summary_csv(report: &BenchReport) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for op in &report.operators {
        let s = &op.summary;
        out.push_str(&format!(
            "{},{},{},{}\n",
            op.operator, s.best, s.mean, s.std
        ));
    }
    out
}

/// Long format: one row per (operator, population, generation).
pub fn trace_csv(report: &BenchReport) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for op in &report.operators {
        for (p, rec) in op.records.iter().enumerate() {
            for (g, len) in rec.trace.iter().enumerate() {
                out.push_str(&format!("{},{p},{g},{len}\n", op.operator));
            }
        }
    }
    out
}

pub fn export_report(report: &BenchReport, format: ExportFormat) -> Result<Vec<Artifact>> {
    Ok(match format {
        ExportFormat::Csv => vec![
            Artifact {
                file_name: "summary.csv",
                bytes: summary_csv(report).into_bytes(),
            },
            Artifact {
                file_name: "traces.csv",
                bytes: trace_csv(report).into_bytes(),
            },
        ],
        ExportFormat::Json => vec![Artifact {
            file_name: "report.json",
            bytes: serde_json::to_vec_pretty(report)?,
        }],
    })
}

pub fn parse_report_json(bytes: &[u8]) -> Result<BenchReport> {
    Ok(serde_json::from_slice(bytes)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tour::Tour;
    use std::time::Duration;

    fn record(best: f64, trace: Vec<f64>) -> RunRecord {
        RunRecord {
            best_tour: Tour::identity(3),
            best_length: best,
            generations_run: trace.len().saturating_sub(1),
            trace,
            seed: 0,
            wall_time: Duration::ZERO,
        }
    }

    #[test]
    fn summarize_examples() {
        let s = summarize(&[record(100.0, vec![120.0, 100.0])]).unwrap();
        assert_eq!((s.best, s.mean, s.std), (100.0, 100.0, 0.0));
        assert_eq!(s.mean_trace, vec![120.0, 100.0]);

        let s = summarize(&[record(7542.0, vec![]), record(7542.0, vec![])]).unwrap();
        assert_eq!(s.std, 0.0);

        let recs: Vec<_> = [7500.0, 7700.0, 7600.0]
            .iter()
            .map(|&b| record(b, vec![b]))
            .collect();
        let s = summarize(&recs).unwrap();
        assert_eq!(s.best, 7500.0);
        assert_eq!(s.mean, 7600.0);
        assert_eq!(s.std, 100.0);
        assert_eq!(s.mean_trace, vec![7600.0]);

        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn csv_with_empty_trace() {
        let report = BenchReport {
            instance: "x".into(),
            master_seed: 0,
            population_count: 1,
            base: GaParams::default(),
            operators: vec![OperatorReport {
                operator: "ox".into(),
                crossover: CrossoverKind::Ox,
                crossover_prob: 0.9,
                mutation_prob: 0.1,
                records: vec![record(5.0, vec![])],
                summary: summarize(&[record(5.0, vec![])]).unwrap(),
            }],
        };
        let files = export_report(&report, ExportFormat::Csv).unwrap();
        assert_eq!(
            String::from_utf8_lossy(&files[0].bytes),
            "operator,best,mean,std\nox,5,5,0\n"
        );
        assert_eq!(
            String::from_utf8_lossy(&files[1].bytes),
            format!("{TRACE_HEADER}\n")
        );
    }

    #[test]
    fn plan_validation() {
        let mut plan = ExperimentPlan::new(vec![], GaParams::default(), 1, 0);
        assert!(plan.validate().is_err());
        plan.operators.push(CrossoverKind::Ox);
        plan.validate().unwrap();
        plan.population_count = 0;
        assert!(plan.validate().is_err());
        plan.population_count = 2;
        plan.px_grid = Some(vec![1.2]);
        assert!(plan.validate().is_err());
    }
}
