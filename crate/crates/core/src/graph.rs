use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ArgumentationFramework;

/// Undirected simple graph on vertices `0..n`.
///
/// Each vertex carries a label used only for display. Heuristic tie-breaks go
/// by vertex index; for graphs built from a framework the index order is the
/// lexicographic order of argument names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalGraph {
    labels: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

impl PrimalGraph {
    /// Graph with `n` isolated vertices labelled `0`, `1`, ...
    pub fn new(n: usize) -> Self {
        Self { labels: (0..n).map(|i| alloc::format!("{i}")).collect(), adj: alloc::vec![BTreeSet::new(); n] }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self { labels, adj: alloc::vec![BTreeSet::new(); n] }
    }

    /// The undirected shadow of the attack relation. Self-attacks add no edge.
    pub fn from_af(af: &ArgumentationFramework) -> Self {
        let mut g = Self::with_labels(af.arguments().to_vec());
        for (a, b) in af.attacks() {
            g.add_edge(a, b);
        }
        g
    }

    /// Adds `{u, v}`; loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::tests::example_one;

    #[test]
    fn example_one_collapses_mutual_attack() {
        let g = PrimalGraph::from_af(&example_one());
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 7);
    }

    #[test]
    fn degenerate_graphs() {
        let empty =
            ArgumentationFramework::new(core::iter::empty::<&str>(), core::iter::empty::<(&str, &str)>()).unwrap();
        let g = PrimalGraph::from_af(&empty);
        assert_eq!((g.vertex_count(), g.edge_count()), (0, 0));
        let selfish = ArgumentationFramework::new(["a"], [("a", "a")]).unwrap();
        let g = PrimalGraph::from_af(&selfish);
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn edges_are_ordered_pairs() {
        let mut g = PrimalGraph::new(3);
        g.add_edge(2, 0);
        g.add_edge(1, 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), alloc::vec![(0, 2), (1, 2)]);
    }
}
