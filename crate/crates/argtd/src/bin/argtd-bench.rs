//! Generates grid instances, runs them under a timeout and writes CSV.

use std::path::PathBuf;
use std::time::Duration;

use argtd::bench::{run_benchmark, write_csv, write_fixture, BenchConfig, GridSpec, Instance, Mode};
use argtd_core::{Heuristic, Semantics};
use clap::Parser;

#[derive(Debug, Parser)]
#[command(name = "argtd-bench", about = "Benchmark argtd on random grid-structured frameworks")]
struct Args {
    /// Grid heights (the width parameter)
    #[arg(long, value_delimiter = ',', default_value = "3")]
    rows: Vec<usize>,
    /// Grid lengths
    #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
    cols: Vec<usize>,
    /// Attack probabilities per directed neighbour pair
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    probability: Vec<f64>,
    /// Generator seeds
    #[arg(long, value_delimiter = ',', default_value = "1")]
    seeds: Vec<u64>,
    /// Reasoning modes: enum, count, cred, skept
    #[arg(long, value_delimiter = ',', default_value = "cred,skept")]
    modes: Vec<Mode>,
    #[arg(long, value_delimiter = ',', default_value = "preferred", value_parser = parse_semantics)]
    semantics: Vec<Semantics>,
    #[arg(long, default_value = "min-fill", value_parser = parse_heuristic)]
    heuristic: Heuristic,
    /// Per-run timeout in milliseconds
    #[arg(long, default_value_t = 300_000)]
    timeout_ms: u64,
    /// Parallel workers
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// CSV destination (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write every instance as an ASPARTIX file into this directory
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    s.parse().map_err(|e: argtd_core::Error| e.to_string())
}

fn parse_heuristic(s: &str) -> Result<Heuristic, String> {
    s.parse().map_err(|e: argtd_core::Error| e.to_string())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args = Args::parse();
    let mut instances = Vec::new();
    for &rows in &args.rows {
        for &cols in &args.cols {
            for &p in &args.probability {
                for &seed in &args.seeds {
                    let spec = GridSpec::new(rows, cols, p, seed);
                    if let Some(dir) = &args.fixtures {
                        std::fs::create_dir_all(dir)?;
                        write_fixture(dir, &spec)?;
                    }
                    instances.push(Instance::Grid(spec));
                }
            }
        }
    }
    let config = BenchConfig {
        modes: args.modes,
        semantics: args.semantics,
        heuristic: args.heuristic,
        heuristic_seed: 0,
        timeout: Duration::from_millis(args.timeout_ms),
        jobs: args.jobs,
    };
    let records = run_benchmark(&instances, &config);
    match args.out {
        Some(path) => write_csv(&records, std::fs::File::create(path)?)?,
        None => write_csv(&records, std::io::stdout().lock())?,
    }
    Ok(())
}
