use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, PrimalGraph};

/// Greedy elimination-ordering heuristics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Heuristic {
    MinFill,
    MinDegree,
    /// Maximum cardinality search.
    Mcs,
}

impl Heuristic {
    pub const ALL: [Heuristic; 3] = [Heuristic::MinFill, Heuristic::MinDegree, Heuristic::Mcs];

    pub fn as_str(self) -> &'static str {
        match self {
            Heuristic::MinFill => "min-fill",
            Heuristic::MinDegree => "min-degree",
            Heuristic::Mcs => "mcs",
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-fill" => Ok(Heuristic::MinFill),
            "min-degree" => Ok(Heuristic::MinDegree),
            "mcs" => Ok(Heuristic::Mcs),
            other => Err(Error::InvalidArgument(alloc::format!("unknown heuristic `{other}`"))),
        }
    }
}

/// Picks among equally good candidates. Seed 0 always takes the smallest
/// index; any other seed draws uniformly from a ChaCha stream.
struct TieBreak(Option<ChaCha8Rng>);

impl TieBreak {
    fn new(seed: u64) -> Self {
        Self((seed != 0).then(|| ChaCha8Rng::seed_from_u64(seed)))
    }

    fn pick(&mut self, candidates: &[usize]) -> usize {
        match &mut self.0 {
            None => candidates[0],
            Some(rng) => candidates[rng.gen_range(0..candidates.len())],
        }
    }
}

/// Computes a vertex elimination ordering of `g`.
///
/// Min-degree and min-fill simulate elimination on a shrinking fill-in graph;
/// MCS visits vertices by number of already visited neighbours and returns the
/// reverse of the visit order.
pub fn elimination_order(g: &PrimalGraph, heuristic: Heuristic, seed: u64) -> Vec<usize> {
    let mut ties = TieBreak::new(seed);
    match heuristic {
        Heuristic::MinDegree => greedy(g, &mut ties, |adj, v| adj[v].len()),
        Heuristic::MinFill => greedy(g, &mut ties, fill_in),
        Heuristic::Mcs => mcs(g, &mut ties),
    }
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let ns: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

fn greedy(g: &PrimalGraph, ties: &mut TieBreak, score: impl Fn(&[BTreeSet<usize>], usize) -> usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut alive = alloc::vec![true; n];
    let mut scores: Vec<usize> = (0..n).map(|v| score(&adj, v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut candidates = Vec::new();

    while order.len() < n {
        let best = (0..n).filter(|&v| alive[v]).map(|v| scores[v]).min().unwrap_or(0);
        candidates.clear();
        candidates.extend((0..n).filter(|&v| alive[v] && scores[v] == best));
        let v = ties.pick(&candidates);

        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &ns {
            adj[a].remove(&v);
            for &b in &ns {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);

        // Scores can only change within distance two of the eliminated vertex.
        let mut dirty: BTreeSet<usize> = ns.iter().copied().collect();
        for &a in &ns {
            dirty.extend(adj[a].iter().copied());
        }
        for u in dirty {
            scores[u] = score(&adj, u);
        }
    }
    order
}

fn mcs(g: &PrimalGraph, ties: &mut TieBreak) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = alloc::vec![0usize; n];
    let mut visited = alloc::vec![false; n];
    let mut visit = Vec::with_capacity(n);
    let mut candidates = Vec::new();
    while visit.len() < n {
        let best = (0..n).filter(|&v| !visited[v]).map(|v| weight[v]).max().unwrap_or(0);
        candidates.clear();
        candidates.extend((0..n).filter(|&v| !visited[v] && weight[v] == best));
        let v = ties.pick(&candidates);
        visited[v] = true;
        visit.push(v);
        for &u in g.neighbors(v) {
            weight[u] += 1;
        }
    }
    visit.reverse();
    visit
}
