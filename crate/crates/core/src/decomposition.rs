use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use crate::{Error, PrimalGraph, Result};

/// A rooted tree whose nodes carry bags of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl TreeDecomposition {
    /// Builds a decomposition from per-node bags and parent links. Exactly one
    /// node must have no parent and the parent links must form a tree.
    pub fn new(bags: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = bags.len();
        if n == 0 || parent.len() != n {
            return Err(Error::InvalidDecomposition(
                "bags and parent links must be non-empty and of equal length".into(),
            ));
        }
        let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidDecomposition(alloc::format!("expected one root, found {}", roots.len())));
        }
        let mut children = alloc::vec![Vec::new(); n];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::InvalidDecomposition(alloc::format!("node {i} has unknown parent {p}")));
                }
                children[p].push(i);
            }
        }
        // Every node must reach the root without revisiting anything.
        for start in 0..n {
            let mut cur = start;
            let mut steps = 0;
            while let Some(p) = parent[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidDecomposition(alloc::format!("cycle through node {start}")));
                }
            }
        }
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Ok(Self { bags, parent, children, root: roots[0] })
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Sorted bag of a node.
    pub fn bag(&self, node: usize) -> &[usize] {
        &self.bags[node]
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    /// Largest bag size minus one (zero when all bags are empty).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// Nodes in an order where every child precedes its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = alloc::vec![(self.root, false)];
        while let Some((node, expanded)) = stack.pop() {
            if expanded {
                out.push(node);
            } else {
                stack.push((node, true));
                stack.extend(self.children[node].iter().rev().map(|&c| (c, false)));
            }
        }
        out
    }

    /// Checks the three decomposition conditions against `g`.
    pub fn validate(&self, g: &PrimalGraph) -> Vec<Violation> {
        let n = g.vertex_count();
        let mut out = Vec::new();
        let mut occurrences = alloc::vec![0usize; n];
        let mut tops = alloc::vec![0usize; n];
        for (node, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    out.push(Violation::UnknownVertex { node, vertex: v });
                    continue;
                }
                occurrences[v] += 1;
                let parent_has = self.parent[node].is_some_and(|p| self.bags[p].binary_search(&v).is_ok());
                if !parent_has {
                    tops[v] += 1;
                }
            }
        }
        for v in 0..n {
            if occurrences[v] == 0 {
                out.push(Violation::Uncovered { vertex: g.label(v).into() });
            } else if tops[v] > 1 {
                out.push(Violation::Disconnected { vertex: g.label(v).into() });
            }
        }
        let mut covered = alloc::collections::BTreeSet::new();
        for bag in &self.bags {
            for (i, &u) in bag.iter().enumerate() {
                for &v in &bag[i + 1..] {
                    covered.insert((u, v));
                }
            }
        }
        for edge in g.edges() {
            if !covered.contains(&edge) {
                out.push(Violation::EdgeNotCovered { edge: (g.label(edge.0).into(), g.label(edge.1).into()) });
            }
        }
        out
    }

    /// Indented text rendering, one node per line:
    /// `<depth*2 spaces><id>: {v1,v2,...}`.
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        let mut stack = alloc::vec![(self.root, 0usize)];
        while let Some((node, depth)) = stack.pop() {
            let _ =
                writeln!(out, "{:indent$}{}: {}", "", node, BagDisplay(&self.bags[node], labels), indent = depth * 2);
            stack.extend(self.children[node].iter().rev().map(|&c| (c, depth + 1)));
        }
        out
    }
}

pub(crate) struct BagDisplay<'a>(pub &'a [usize], pub &'a [String]);

impl fmt::Display for BagDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match self.1.get(v) {
                Some(l) => f.write_str(l)?,
                None => write!(f, "{v}")?,
            }
        }
        f.write_str("}")
    }
}

/// A violated decomposition condition, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A bag mentions a vertex the graph does not have.
    UnknownVertex { node: usize, vertex: usize },
    /// The vertex appears in no bag.
    Uncovered { vertex: String },
    /// The nodes containing the vertex do not form a connected subtree.
    Disconnected { vertex: String },
    /// No bag contains both endpoints.
    EdgeNotCovered { edge: (String, String) },
    /// Normalized-form violations name the offending node.
    Node { node: usize, message: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex { node, vertex } => write!(f, "node {node}: unknown vertex {vertex}"),
            Violation::Uncovered { vertex } => write!(f, "cover: vertex {vertex} is in no bag"),
            Violation::Disconnected { vertex } => {
                write!(f, "connectedness: bags containing {vertex} are not connected")
            }
            Violation::EdgeNotCovered { edge: (u, v) } => write!(f, "edge coverage: no bag contains {{{u},{v}}}"),
            Violation::Node { node, message } => write!(f, "node {node}: {message}"),
        }
    }
}

/// Bucket elimination along `order`.
///
/// Eliminating `v` creates a node with bag `{v} ∪ N(v)` in the current fill-in
/// graph, turns `N(v)` into a clique and hangs the node below the node of the
/// neighbour eliminated next. Component roots are attached to the last node so
/// the result is a single tree. An empty graph yields one empty bag.
pub fn decompose(g: &PrimalGraph, order: &[usize]) -> Result<TreeDecomposition> {
    let n = g.vertex_count();
    let mut position = alloc::vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(Error::InvalidArgument("elimination order is not a permutation of the vertices".into()));
        }
        position[v] = i;
    }
    if order.len() != n {
        return Err(Error::InvalidArgument("elimination order is not a permutation of the vertices".into()));
    }
    if n == 0 {
        return TreeDecomposition::new(alloc::vec![Vec::new()], alloc::vec![None]);
    }

    let mut adj: Vec<alloc::collections::BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = alloc::vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &ns {
            adj[a].remove(&v);
            for &b in &ns {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        parent[i] = ns.iter().map(|&u| position[u]).min();
        let mut bag = ns;
        bag.push(v);
        bags.push(bag);
    }
    let last = n - 1;
    for p in parent.iter_mut().take(last) {
        if p.is_none() {
            *p = Some(last);
        }
    }
    TreeDecomposition::new(bags, parent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::tests::example_one;
    use crate::{elimination_order, Heuristic};
    use alloc::vec;

    // Vertices of the example framework: a=0 .. g=6.
    fn paper_decomposition(ab_bag: Vec<usize>) -> TreeDecomposition {
        TreeDecomposition::new(
            vec![vec![2, 3], vec![1, 2], ab_bag, vec![3, 4], vec![4, 5, 6]],
            vec![None, Some(0), Some(1), Some(0), Some(3)],
        )
        .unwrap()
    }

    #[test]
    fn paper_decomposition_is_valid() {
        let g = PrimalGraph::from_af(&example_one());
        let td = paper_decomposition(vec![0, 1]);
        assert!(td.validate(&g).is_empty());
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn shrinking_a_bag_breaks_edge_coverage() {
        let g = PrimalGraph::from_af(&example_one());
        let v = paper_decomposition(vec![0]).validate(&g);
        assert_eq!(v, vec![Violation::EdgeNotCovered { edge: ("a".into(), "b".into()) }]);
    }

    #[test]
    fn gap_on_path_breaks_connectedness() {
        let mut g = PrimalGraph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        // 0 occurs in both children but not in the root.
        let td =
            TreeDecomposition::new(vec![vec![1], vec![0, 1], vec![0, 1, 2]], vec![None, Some(0), Some(0)]).unwrap();
        let v = td.validate(&g);
        assert_eq!(v, vec![Violation::Disconnected { vertex: "0".into() }]);
    }

    #[test]
    fn missing_vertex_breaks_cover() {
        let g = PrimalGraph::new(2);
        let td = TreeDecomposition::new(vec![vec![0]], vec![None]).unwrap();
        assert_eq!(td.validate(&g), vec![Violation::Uncovered { vertex: "1".into() }]);
    }

    #[test]
    fn structural_errors() {
        assert!(TreeDecomposition::new(vec![vec![0], vec![1]], vec![None, None]).is_err());
        assert!(TreeDecomposition::new(vec![vec![0], vec![1], vec![2]], vec![None, Some(2), Some(1)]).is_err());
        assert!(TreeDecomposition::new(vec![vec![0]], vec![Some(3)]).is_err());
    }

    #[test]
    fn single_vertex_and_empty_graph() {
        let td = decompose(&PrimalGraph::new(1), &[0]).unwrap();
        assert_eq!((td.len(), td.width(), td.bag(0)), (1, 0, &[0][..]));
        let td = decompose(&PrimalGraph::new(0), &[]).unwrap();
        assert_eq!((td.len(), td.bag(0).len()), (1, 0));
    }

    #[test]
    fn complete_graph_has_full_width() {
        let mut g = PrimalGraph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(u, v);
            }
        }
        for order in [[0, 1, 2, 3], [3, 1, 0, 2]] {
            let td = decompose(&g, &order).unwrap();
            assert!(td.validate(&g).is_empty());
            assert_eq!(td.width(), 3);
        }
    }

    #[test]
    fn rejects_non_permutations() {
        let g = PrimalGraph::new(3);
        assert!(decompose(&g, &[0, 1]).is_err());
        assert!(decompose(&g, &[0, 1, 1]).is_err());
        assert!(decompose(&g, &[0, 1, 5]).is_err());
    }

    #[test]
    fn isolated_vertices_get_singleton_bags() {
        let g = PrimalGraph::new(3);
        let td = decompose(&g, &[0, 1, 2]).unwrap();
        assert!(td.validate(&g).is_empty());
        assert!((0..3).all(|i| td.bag(i).len() == 1));
    }

    #[test]
    fn example_one_reaches_width_two() {
        let g = PrimalGraph::from_af(&example_one());
        let best = Heuristic::ALL
            .iter()
            .map(|&h| {
                let td = decompose(&g, &elimination_order(&g, h, 0)).unwrap();
                assert!(td.validate(&g).is_empty());
                td.width()
            })
            .min()
            .unwrap();
        assert_eq!(best, 2);
    }

    #[test]
    fn render_indents_by_depth() {
        let g = PrimalGraph::from_af(&example_one());
        let text = paper_decomposition(vec![0, 1]).render(g.labels());
        assert_eq!(text, "0: {c,d}\n  1: {b,c}\n    2: {a,b}\n  3: {d,e}\n    4: {e,f,g}\n");
    }
}
