//! Random grid-structured frameworks and a timeout-driven benchmark harness.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use argtd_core::dp::Solver;
use argtd_core::{
    decompose, elimination_order, normalize, ArgumentationFramework, Error, Heuristic, PrimalGraph, Semantics,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aspartix::serialize_aspartix;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid grid specification: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A `rows × cols` grid whose Moore-adjacent cells may attack each other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    /// Probability that each directed neighbour pair is an attack.
    pub probability: f64,
    pub seed: u64,
}

impl GridSpec {
    pub fn new(rows: usize, cols: usize, probability: f64, seed: u64) -> Self {
        Self { rows, cols, probability, seed }
    }

    /// `grid_<rows>x<cols>_p<pct>_s<seed>`, with the probability in percent.
    pub fn instance_id(&self) -> String {
        format!("grid_{}x{}_p{}_s{}", self.rows, self.cols, (self.probability * 100.0).round() as i64, self.seed)
    }

    pub fn file_name(&self) -> String {
        format!("{}.af", self.instance_id())
    }
}

/// Number of ordered pairs of distinct cells at Chebyshev distance one.
pub fn moore_pairs(rows: usize, cols: usize) -> usize {
    let horizontal = rows * cols.saturating_sub(1);
    let vertical = rows.saturating_sub(1) * cols;
    let diagonal = 2 * rows.saturating_sub(1) * cols.saturating_sub(1);
    2 * (horizontal + vertical + diagonal)
}

pub fn cell_name(r: usize, c: usize) -> String {
    format!("a_{r}_{c}")
}

/// Generates the grid framework for `spec`. Arguments are `a_<r>_<c>`
/// (1-based); each directed neighbour pair is drawn independently from a
/// ChaCha stream seeded by `spec.seed`.
pub fn generate_grid_af(spec: &GridSpec) -> Result<ArgumentationFramework, BenchError> {
    if spec.rows == 0 || spec.cols == 0 {
        return Err(BenchError::InvalidSpec("rows and cols must be positive".into()));
    }
    if !(0.0..=1.0).contains(&spec.probability) {
        return Err(BenchError::InvalidSpec(format!("probability {} not in [0,1]", spec.probability)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut names = Vec::with_capacity(spec.rows * spec.cols);
    let mut attacks = Vec::new();
    for r in 1..=spec.rows {
        for c in 1..=spec.cols {
            names.push(cell_name(r, c));
            for dr in -1i64..=1 {
                for dc in -1i64..=1 {
                    if dr == 0 && dc == 0 {
                        continue;
                    }
                    let (nr, nc) = (r as i64 + dr, c as i64 + dc);
                    if nr < 1 || nc < 1 || nr > spec.rows as i64 || nc > spec.cols as i64 {
                        continue;
                    }
                    if rng.gen::<f64>() < spec.probability {
                        attacks.push((cell_name(r, c), cell_name(nr as usize, nc as usize)));
                    }
                }
            }
        }
    }
    Ok(ArgumentationFramework::new(names, attacks).expect("grid cells are declared"))
}

/// Writes the instance for `spec` into `dir` and returns its path.
pub fn write_fixture(dir: &Path, spec: &GridSpec) -> Result<PathBuf, BenchError> {
    let path = dir.join(spec.file_name());
    std::fs::write(&path, serialize_aspartix(&generate_grid_af(spec)?))?;
    Ok(path)
}

#[derive(Debug, Clone)]
pub enum Instance {
    Grid(GridSpec),
    Fixture { id: String, af: ArgumentationFramework },
}

impl Instance {
    pub fn id(&self) -> String {
        match self {
            Instance::Grid(spec) => spec.instance_id(),
            Instance::Fixture { id, .. } => id.clone(),
        }
    }
}

impl From<GridSpec> for Instance {
    fn from(spec: GridSpec) -> Self {
        Instance::Grid(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Enum,
    Count,
    Credulous,
    Skeptical,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Enum => "enum",
            Mode::Count => "count",
            Mode::Credulous => "cred",
            Mode::Skeptical => "skept",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "enum" => Ok(Mode::Enum),
            "count" => Ok(Mode::Count),
            "cred" => Ok(Mode::Credulous),
            "skept" => Ok(Mode::Skeptical),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// One measurement. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchRecord {
    pub instance_id: String,
    pub n_args: usize,
    pub n_attacks: usize,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub probability: Option<f64>,
    pub seed: Option<u64>,
    pub heuristic: String,
    pub decomposition_width: Option<usize>,
    pub semantics: String,
    pub mode: String,
    pub runtime_millis: f64,
    pub timed_out: bool,
    pub answer: String,
}

pub const CSV_HEADER: [&str; 14] = [
    "instanceId",
    "nArgs",
    "nAttacks",
    "rows",
    "cols",
    "probability",
    "seed",
    "heuristic",
    "decompositionWidth",
    "semantics",
    "mode",
    "runtimeMillis",
    "timedOut",
    "answer",
];

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub modes: Vec<Mode>,
    pub semantics: Vec<Semantics>,
    pub heuristic: Heuristic,
    pub heuristic_seed: u64,
    pub timeout: Duration,
    /// Worker threads; each worker runs whole instances.
    pub jobs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            modes: vec![Mode::Count],
            semantics: vec![Semantics::Preferred],
            heuristic: Heuristic::MinFill,
            heuristic_seed: 0,
            timeout: Duration::from_secs(300),
            jobs: 1,
        }
    }
}

enum Outcome {
    Answer(String),
    TimedOut,
    Failed(String),
}

fn solve(
    af: &ArgumentationFramework,
    semantics: Semantics,
    mode: Mode,
    config: &BenchConfig,
    deadline: Instant,
    width: &mut Option<usize>,
) -> Outcome {
    let stop = || Instant::now() >= deadline;
    let mut run = || -> Result<String, Error> {
        let g = PrimalGraph::from_af(af);
        let td = decompose(&g, &elimination_order(&g, config.heuristic, config.heuristic_seed))?;
        *width = Some(td.width());
        if stop() {
            return Err(Error::Interrupted);
        }
        let nd = normalize(&td)?;
        let solver = Solver::new(af, &nd)?.with_interrupt(&stop);
        let query = || af.arguments().first().cloned().ok_or_else(|| Error::InvalidArgument("empty framework".into()));
        let yes_no = |b: bool| if b { "YES" } else { "NO" };
        Ok(match mode {
            Mode::Enum => solver.enumerate(semantics)?.len().to_string(),
            Mode::Count => solver.count(semantics)?.to_string(),
            Mode::Credulous => {
                let x = query()?;
                format!("{x}:{}", yes_no(solver.credulous(&x)?))
            }
            Mode::Skeptical => {
                let x = query()?;
                format!("{x}:{}", yes_no(solver.skeptical(&x, semantics)?))
            }
        })
    };
    match run() {
        Ok(answer) => Outcome::Answer(answer),
        Err(Error::Interrupted) => Outcome::TimedOut,
        Err(e) => Outcome::Failed(e.to_string()),
    }
}

fn measure(instance: &Instance, semantics: Semantics, mode: Mode, config: &BenchConfig) -> BenchRecord {
    let (af, grid) = match instance {
        Instance::Grid(spec) => (generate_grid_af(spec), Some(*spec)),
        Instance::Fixture { af, .. } => (Ok(af.clone()), None),
    };
    let mut record = BenchRecord {
        instance_id: instance.id(),
        n_args: 0,
        n_attacks: 0,
        rows: grid.map(|g| g.rows),
        cols: grid.map(|g| g.cols),
        probability: grid.map(|g| g.probability),
        seed: grid.map(|g| g.seed),
        heuristic: config.heuristic.to_string(),
        decomposition_width: None,
        semantics: semantics.to_string(),
        mode: mode.as_str().to_string(),
        runtime_millis: 0.0,
        timed_out: false,
        answer: String::new(),
    };
    let af = match af {
        Ok(af) => af,
        Err(e) => {
            record.answer = format!("error: {e}");
            return record;
        }
    };
    record.n_args = af.len();
    record.n_attacks = af.attack_count();

    let start = Instant::now();
    let deadline = start + config.timeout;
    let outcome = solve(&af, semantics, mode, config, deadline, &mut record.decomposition_width);
    let elapsed = start.elapsed();
    let cap = config.timeout.as_secs_f64() * 1000.0;
    match outcome {
        Outcome::Answer(a) if elapsed < config.timeout => {
            record.runtime_millis = elapsed.as_secs_f64() * 1000.0;
            record.answer = a;
        }
        Outcome::Answer(_) | Outcome::TimedOut => {
            record.runtime_millis = cap;
            record.timed_out = true;
        }
        Outcome::Failed(e) => {
            record.runtime_millis = elapsed.as_secs_f64() * 1000.0;
            record.answer = format!("error: {e}");
        }
    }
    record
}

/// Runs every (instance, semantics, mode) combination and returns the records
/// in that submission order. Runs exceeding the timeout are recorded with
/// `timed_out = true` and the timeout as their runtime.
pub fn run_benchmark(instances: &[Instance], config: &BenchConfig) -> Vec<BenchRecord> {
    let jobs: Vec<(usize, Semantics, Mode)> = (0..instances.len())
        .flat_map(|i| config.semantics.iter().flat_map(move |&s| config.modes.iter().map(move |&m| (i, s, m))))
        .collect();
    let workers = config.jobs.clamp(1, jobs.len().max(1));
    if workers == 1 {
        return jobs.iter().map(|&(i, s, m)| measure(&instances[i], s, m, config)).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<BenchRecord>> = vec![None; jobs.len()];
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(&(i, s, m)) = jobs.get(k) else { break };
                let record = measure(&instances[i], s, m, config);
                results.lock().unwrap()[k] = Some(record);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every job ran")).collect()
}

/// Writes a header line and one line per record.
pub fn write_csv<W: Write>(records: &[BenchRecord], sink: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_two_by_two() {
        for seed in [0, 1, 77] {
            let af = generate_grid_af(&GridSpec::new(2, 2, 1.0, seed)).unwrap();
            assert_eq!((af.len(), af.attack_count()), (4, 12));
        }
        assert_eq!(moore_pairs(2, 2), 12);
    }

    #[test]
    fn zero_probability_is_attack_free() {
        let af = generate_grid_af(&GridSpec::new(4, 5, 0.0, 9)).unwrap();
        assert_eq!((af.len(), af.attack_count()), (20, 0));
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = GridSpec::new(4, 6, 0.4, 1234);
        assert_eq!(
            serialize_aspartix(&generate_grid_af(&spec).unwrap()),
            serialize_aspartix(&generate_grid_af(&spec).unwrap())
        );
        let other = GridSpec { seed: 1235, ..spec };
        assert_ne!(generate_grid_af(&spec).unwrap(), generate_grid_af(&other).unwrap());
    }

    #[test]
    fn invalid_specs() {
        assert!(generate_grid_af(&GridSpec::new(0, 3, 0.5, 0)).is_err());
        assert!(generate_grid_af(&GridSpec::new(3, 3, 1.5, 0)).is_err());
        assert!(generate_grid_af(&GridSpec::new(3, 3, f64::NAN, 0)).is_err());
    }

    #[test]
    fn no_self_attacks_and_only_neighbours() {
        let af = generate_grid_af(&GridSpec::new(3, 3, 1.0, 5)).unwrap();
        assert_eq!(af.attack_count(), moore_pairs(3, 3));
        for (a, b) in af.attacks_named() {
            assert_ne!(a, b);
        }
    }

    #[test]
    fn ids_and_file_names() {
        let spec = GridSpec::new(3, 10, 0.5, 7);
        assert_eq!(spec.instance_id(), "grid_3x10_p50_s7");
        assert_eq!(spec.file_name(), "grid_3x10_p50_s7.af");
    }

    #[test]
    fn empty_csv_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", CSV_HEADER.join(",")));
    }
}
