//! `tspga`: solve TSPLIB instances with a permutation GA, compare crossover
//! operators, compute exact optima for small instances and validate tours.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "tspga",
    version,
    about = "Permutation genetic algorithm for the symmetric TSP"
)]
struct Cli {
    /// Print progress and timing to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the GA once and report the best tour found.
    Solve(SolveArgs),
    /// Compare crossover operators on shared starting populations.
    Bench(BenchArgs),
    /// Compute the optimum of a small instance by enumeration.
    Exact(ExactArgs),
    /// Check an instance file and optionally a tour against it.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct InstanceArgs {
    /// TSPLIB file with EUC_2D coordinates.
    #[arg(long)]
    instance: PathBuf,

    /// Distance rounding: `rounded` (TSPLIB nint) or `real`.
    #[arg(long)]
    metric: Option<String>,
}

/// GA settings. Each flag overrides the same key from `--config`.
#[derive(Debug, Args)]
struct ParamArgs {
    /// File of `key = value` lines using the flag names below.
    #[arg(long)]
    config: Option<PathBuf>,

    /// uxo, cx, pmx, upmx, upmx:<threshold>, nwox or ox.
    #[arg(long)]
    crossover: Option<String>,

    /// Crossover probability in [0, 1].
    #[arg(long)]
    px: Option<String>,

    /// Mutation operator (only `rsm`).
    #[arg(long)]
    mutation: Option<String>,

    /// Mutation probability in [0, 1].
    #[arg(long)]
    pm: Option<String>,

    /// Population size, at least 2.
    #[arg(long)]
    population: Option<String>,

    /// Number of generations.
    #[arg(long)]
    iterations: Option<String>,

    /// random, mutate-first or heuristic-nn.
    #[arg(long)]
    init: Option<String>,

    /// Run seed (bench: master seed).
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,

    #[command(flatten)]
    params: ParamArgs,

    /// Write the run (best tour and per-generation trace) to this file.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Format of `--out`: csv or json.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    instance: InstanceArgs,

    #[command(flatten)]
    params: ParamArgs,

    /// Comma-separated crossover operators to compare.
    #[arg(long, default_value = "ox,nwox,pmx,upmx,cx")]
    operators: String,

    /// Number of shared starting populations (runs per operator).
    #[arg(long, default_value_t = 50)]
    populations: usize,

    /// Also sweep px over 1.0, 0.9, ..., 0.0.
    #[arg(long)]
    sweep_px: bool,

    /// Also sweep pm over 1.0, 0.9, ..., 0.0.
    #[arg(long)]
    sweep_pm: bool,

    /// Worker threads; 0 uses every available core.
    #[arg(long, visible_alias = "threads", default_value_t = 0)]
    workers: usize,

    /// Output directory for summary.csv and traces.csv (or report.json).
    #[arg(long, default_value = "tspga-bench")]
    out: PathBuf,

    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[command(flatten)]
    instance: InstanceArgs,

    /// Refuse instances with more cities than this.
    #[arg(long, default_value_t = tspga::oracle::DEFAULT_MAX_CITIES)]
    max_n: usize,

    /// Enumerate all n! orders instead of one per tour.
    #[arg(long)]
    full: bool,

    /// Also write the result as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    instance: InstanceArgs,

    /// Tour to check: a TSPLIB tour file or 1-based city ids separated by whitespace.
    #[arg(long)]
    tour: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            // --help and --version
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let rendered = err.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("error: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match commands::dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let chain: Vec<String> = err.chain().map(|e| e.to_string()).collect();
            eprintln!("error: {}", chain.join(": ").replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
