use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde_json::json;

use tspga::experiment::PROBABILITY_GRID;
use tspga::{
    brute_force_optimum, export_report, parse_tsplib_tour, run_comparison, run_ga, validate_tour,
    CrossoverKind, Enumeration, ExperimentPlan, ExportFormat, GaParams, Metric, TspInstance,
};

use crate::output::write_atomic;
use crate::{BenchArgs, Cli, Command, ExactArgs, InstanceArgs, ParamArgs, SolveArgs, ValidateArgs};

pub fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => solve(args, cli.verbose),
        Command::Bench(args) => bench(args, cli.verbose),
        Command::Exact(args) => exact(args, cli.verbose),
        Command::Validate(args) => validate(args),
    }
}

fn load_instance(args: &InstanceArgs) -> Result<TspInstance> {
    let instance = TspInstance::load(&args.instance)
        .with_context(|| format!("loading {}", args.instance.display()))?;
    Ok(match &args.metric {
        Some(m) => instance.with_metric(m.parse::<Metric>()?),
        None => instance,
    })
}

/// Built-in defaults, then the config file, then explicit flags.
fn resolve_params(args: &ParamArgs) -> Result<GaParams> {
    let mut params = GaParams::default();
    if let Some(path) = &args.config {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        params
            .apply_config(&text)
            .with_context(|| format!("in config {}", path.display()))?;
    }
    let flags = [
        ("population", &args.population),
        ("crossover", &args.crossover),
        ("px", &args.px),
        ("mutation", &args.mutation),
        ("pm", &args.pm),
        ("iterations", &args.iterations),
        ("init", &args.init),
        ("seed", &args.seed),
    ];
    for (key, value) in flags {
        if let Some(value) = value {
            params.set(key, value)?;
        }
    }
    params.validate()?;
    Ok(params)
}

/// City ids as written in TSPLIB files (1-based), space separated.
fn one_based(order: &[usize]) -> String {
    order
        .iter()
        .map(|c| (c + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn solve(args: SolveArgs, verbose: bool) -> Result<()> {
    let mut text = String::new();
    let instance = load_instance(&args.instance)?;
    let params = resolve_params(&args.params)?;
    let format: ExportFormat = args.format.parse()?;

    let record = run_ga(&instance, &params)?;
    if verbose {
        eprintln!(
            "{} generations in {:.3} s",
            record.generations_run,
            record.wall_time.as_secs_f64()
        );
    }

    if let Some(out) = &args.out {
        let bytes = match format {
            ExportFormat::Json => {
                let doc = json!({
                    "instance": instance.name(),
                    "cities": instance.len(),
                    "metric": instance.metric().to_string(),
                    "params": params,
                    "best_length": record.best_length,
                    "tour": record.best_tour.order().iter().map(|c| c + 1).collect::<Vec<_>>(),
                    "trace": record.trace,
                });
                let mut bytes = serde_json::to_vec_pretty(&doc)?;
                bytes.push(b'\n');
                bytes
            }
            ExportFormat::Csv => {
                let mut text = String::from("generation,best_length\n");
                for (g, len) in record.trace.iter().enumerate() {
                    text.push_str(&format!("{g},{len}\n"));
                }
                text.into_bytes()
            }
        };
        write_atomic(out, &bytes)?;
    }

    writeln!(
        text,
        "instance: {} ({} cities, {})",
        instance.name(),
        instance.len(),
        instance.metric()
    )?;
    writeln!(
        text,
        "crossover: {}  px: {}  mutation: {}  pm: {}  population: {}  iterations: {}  init: {}  seed: {}",
        params.crossover,
        params.crossover_prob,
        params.mutation,
        params.mutation_prob,
        params.population_size,
        params.iterations,
        params.init_strategy,
        params.seed
    )?;
    writeln!(text, "best_length: {}", record.best_length)?;
    writeln!(text, "tour: {}", one_based(record.best_tour.order()))?;
    if let Some(out) = &args.out {
        writeln!(text, "wrote {}", out.display())?;
    }
    emit(&text)
}

fn parse_operators(list: &str) -> Result<Vec<CrossoverKind>> {
    let ops = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<tspga::Result<Vec<CrossoverKind>>>()?;
    if ops.is_empty() {
        bail!("--operators needs at least one operator");
    }
    Ok(ops)
}

fn bench(args: BenchArgs, verbose: bool) -> Result<()> {
    let mut text = String::new();
    let instance = load_instance(&args.instance)?;
    let base = resolve_params(&args.params)?;
    let format: ExportFormat = args.format.parse()?;
    let operators = parse_operators(&args.operators)?;

    let mut plan = ExperimentPlan::new(operators, base.clone(), args.populations, base.seed);
    plan.workers = args.workers;
    if args.sweep_px {
        plan.px_grid = Some(PROBABILITY_GRID.to_vec());
    }
    if args.sweep_pm {
        plan.pm_grid = Some(PROBABILITY_GRID.to_vec());
    }

    let start = Instant::now();
    let report = run_comparison(&instance, &plan)?;
    if verbose {
        eprintln!(
            "{} runs in {:.3} s",
            report.operators.len() * plan.population_count,
            start.elapsed().as_secs_f64()
        );
    }

    let artifacts = export_report(&report, format)?;
    for artifact in &artifacts {
        write_atomic(&args.out.join(artifact.file_name), &artifact.bytes)?;
    }

    writeln!(
        text,
        "instance: {} ({} cities, {})  populations: {}  iterations: {}  master seed: {}",
        instance.name(),
        instance.len(),
        instance.metric(),
        plan.population_count,
        base.iterations,
        plan.master_seed
    )?;
    let width = report
        .operators
        .iter()
        .map(|o| o.operator.len())
        .max()
        .unwrap_or(8)
        .max(8);
    writeln!(
        text,
        "{:<width$}  {:>12}  {:>12}  {:>10}",
        "operator", "best", "mean", "std"
    )?;
    for op in &report.operators {
        let s = &op.summary;
        writeln!(
            text,
            "{:<width$}  {:>12.2}  {:>12.2}  {:>10.2}",
            op.operator, s.best, s.mean, s.std
        )?;
    }
    for artifact in &artifacts {
        writeln!(
            text,
            "wrote {}",
            args.out.join(artifact.file_name).display()
        )?;
    }
    emit(&text)
}

fn exact(args: ExactArgs, verbose: bool) -> Result<()> {
    let mut text = String::new();
    let instance = load_instance(&args.instance)?;
    let mode = if args.full {
        Enumeration::Full
    } else {
        Enumeration::SymmetryReduced
    };
    let start = Instant::now();
    let result = brute_force_optimum(&instance, args.max_n, mode)?;
    if verbose {
        eprintln!("enumeration took {:.3} s", start.elapsed().as_secs_f64());
    }
    if let Some(out) = &args.out {
        let doc = json!({
            "instance": instance.name(),
            "cities": instance.len(),
            "metric": instance.metric().to_string(),
            "optimal_length": result.optimal_length,
            "tour": result.optimal_tour.order().iter().map(|c| c + 1).collect::<Vec<_>>(),
            "permutations_examined": result.permutations_examined,
        });
        let mut bytes = serde_json::to_vec_pretty(&doc)?;
        bytes.push(b'\n');
        write_atomic(out, &bytes)?;
    }
    writeln!(
        text,
        "instance: {} ({} cities, {})",
        instance.name(),
        instance.len(),
        instance.metric()
    )?;
    writeln!(text, "optimal_length: {:?}", result.optimal_length)?;
    writeln!(text, "tour: {}", one_based(result.optimal_tour.order()))?;
    writeln!(
        text,
        "permutations_examined: {}",
        result.permutations_examined
    )?;
    emit(&text)
}

/// Reads a TSPLIB tour file, or failing that a plain list of 1-based ids
/// optionally terminated by -1.
fn read_tour(path: &Path) -> Result<Vec<usize>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.contains("TOUR_SECTION") {
        return Ok(parse_tsplib_tour(&text)?);
    }
    let mut order = Vec::new();
    for token in text.split_whitespace() {
        if token == "-1" {
            break;
        }
        let id: usize = token
            .parse()
            .with_context(|| format!("{}: `{token}` is not a city id", path.display()))?;
        if id == 0 {
            bail!("{}: city ids start at 1", path.display());
        }
        order.push(id - 1);
    }
    Ok(order)
}

fn validate(args: ValidateArgs) -> Result<()> {
    let mut text = String::new();
    let instance = load_instance(&args.instance)?;
    writeln!(
        text,
        "instance ok: {} ({} cities, {})",
        instance.name(),
        instance.len(),
        instance.metric()
    )?;
    if let Some(path) = &args.tour {
        let order = read_tour(path)?;
        validate_tour(&order, instance.len())
            .map_err(|v| anyhow::anyhow!("invalid tour {}: {v}", path.display()))?;
        writeln!(text, "tour ok: length {}", instance.tour_length(&order)?)?;
    }
    emit(&text)
}

/// Prints the buffered summary. A closed stdout (as in `| head`) is not an
/// error: the result files are already written.
fn emit(text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}
