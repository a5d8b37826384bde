//! The `argtd` command line.

use std::io::{Read, Write};
use std::path::PathBuf;

use argtd_core::dp::Solver;
use argtd_core::{decompose, elimination_order, normalize, Error, Heuristic, PrimalGraph, Semantics};
use clap::{ArgGroup, Parser};

use crate::aspartix::parse_aspartix;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Enum,
    Count,
    Credulous(String),
    Skeptical(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    /// `None` reads standard input.
    pub input: Option<PathBuf>,
    pub semantics: Semantics,
    pub mode: Mode,
    pub heuristic: Heuristic,
    pub seed: u64,
    pub stats: bool,
}

#[derive(Debug, Parser)]
#[command(
    name = "argtd",
    about = "Admissible and preferred reasoning on argumentation frameworks via tree decompositions",
    group(ArgGroup::new("mode").args(["enumerate", "count", "cred", "skept"]).multiple(false))
)]
struct Args {
    /// Input file in ASPARTIX format (standard input when omitted)
    #[arg(short = 'f', value_name = "FILE")]
    file: Option<PathBuf>,
    /// admissible or preferred
    #[arg(short = 's', value_name = "SEMANTICS", default_value = "preferred", value_parser = parse_semantics)]
    semantics: Semantics,
    /// Enumerate all extensions (default)
    #[arg(long = "enum")]
    enumerate: bool,
    /// Count extensions
    #[arg(long)]
    count: bool,
    /// Decide credulous acceptance of an argument
    #[arg(long, value_name = "ARG")]
    cred: Option<String>,
    /// Decide skeptical acceptance of an argument
    #[arg(long, value_name = "ARG")]
    skept: Option<String>,
    /// Elimination-ordering heuristic: min-fill, min-degree or mcs
    #[arg(long, default_value = "min-fill", value_parser = parse_heuristic)]
    heuristic: Heuristic,
    /// Tie-break seed; 0 is lexicographic
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print instance and decomposition statistics to standard error
    #[arg(long)]
    stats: bool,
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_heuristic(s: &str) -> Result<Heuristic, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Rejected command line. `help` is set when the user asked for help or the
/// version, which is not a failure.
#[derive(Debug, Clone)]
pub struct UsageError {
    pub message: String,
    pub help: bool,
}

impl UsageError {
    pub fn exit_code(&self) -> i32 {
        if self.help {
            EXIT_OK
        } else {
            EXIT_USAGE
        }
    }
}

/// Parses `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| UsageError {
        message: e.render().to_string(),
        help: matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion),
    })?;
    let mode = match (args.count, args.cred, args.skept) {
        (true, _, _) => Mode::Count,
        (_, Some(x), _) => Mode::Credulous(x),
        (_, _, Some(x)) => Mode::Skeptical(x),
        _ => Mode::Enum,
    };
    Ok(CliConfig {
        input: args.file,
        semantics: args.semantics,
        mode,
        heuristic: args.heuristic,
        seed: args.seed,
        stats: args.stats,
    })
}

fn read_input(config: &CliConfig) -> std::io::Result<String> {
    match &config.input {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Runs the pipeline and writes the answer to `out`; returns the exit code.
pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match read_input(config) {
        Ok(t) => t,
        Err(e) => {
            let name = config.input.as_ref().map_or("<stdin>".into(), |p| p.display().to_string());
            let _ = writeln!(err, "argtd: cannot read {name}: {e}");
            return EXIT_PARSE;
        }
    };
    run_text(config, &text, out, err)
}

/// [`run`] on already loaded input text.
pub fn run_text(config: &CliConfig, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let af = match parse_aspartix(text) {
        Ok(af) => af,
        Err(d) => {
            let name = config.input.as_ref().map_or("<stdin>".into(), |p| p.display().to_string());
            let _ = writeln!(err, "{name}:{d}");
            return EXIT_PARSE;
        }
    };
    if let Mode::Credulous(x) | Mode::Skeptical(x) = &config.mode {
        if af.index_of(x).is_none() {
            let _ = writeln!(err, "argtd: unknown argument `{x}`");
            return EXIT_USAGE;
        }
    }

    let g = PrimalGraph::from_af(&af);
    let answer = (|| -> Result<Vec<String>, Error> {
        let td = decompose(&g, &elimination_order(&g, config.heuristic, config.seed))?;
        let nd = normalize(&td)?;
        if config.stats {
            let _ = writeln!(err, "arguments: {}", af.len());
            let _ = writeln!(err, "attacks: {}", af.attack_count());
            let _ = writeln!(err, "width: {}", td.width());
            let _ = writeln!(err, "normalized nodes: {}", nd.len());
        }
        let solver = Solver::new(&af, &nd)?;
        let yes_no = |b: bool| vec![if b { "YES" } else { "NO" }.to_string()];
        Ok(match &config.mode {
            Mode::Enum => {
                let mut lines: Vec<String> =
                    solver.enumerate(config.semantics)?.iter().map(|e| e.to_string()).collect();
                lines.sort();
                lines
            }
            Mode::Count => vec![solver.count(config.semantics)?.to_string()],
            Mode::Credulous(x) => yes_no(solver.credulous(x)?),
            Mode::Skeptical(x) => yes_no(solver.skeptical(x, config.semantics)?),
        })
    })();
    match answer {
        Ok(lines) => {
            for l in lines {
                if writeln!(out, "{l}").is_err() {
                    return EXIT_INTERNAL;
                }
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "argtd: {e}");
            EXIT_INTERNAL
        }
    }
}
