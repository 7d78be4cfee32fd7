//! Solves the bundled Berlin52 instance with the default OX + RSM settings.
//!
//! `cargo run --release -p tspga-core --example berlin52 -- [runs] [iterations]`

use std::time::Instant;

use tspga::{derive_seed, run_ga, GaParams, TspInstance, BERLIN52_TSP};

fn main() -> tspga::Result<()> {
    let mut args = std::env::args().skip(1);
    let runs: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let iterations: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5000);
    let instance = TspInstance::load(BERLIN52_TSP)?;
    let start = Instant::now();
    let mut bests = Vec::new();
    for r in 0..runs {
        let params = GaParams {
            iterations,
            seed: derive_seed(1, r),
            ..GaParams::default()
        };
        let rec = run_ga(&instance, &params)?;
        println!("run {r}: best {} ({:?})", rec.best_length, rec.wall_time);
        bests.push(rec.best_length);
    }
    let mean = bests.iter().sum::<f64>() / bests.len() as f64;
    let min = bests.iter().copied().fold(f64::INFINITY, f64::min);
    println!("min {min} mean {mean} total {:?}", start.elapsed());
    Ok(())
}
