use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::decomposition::BagDisplay;
use crate::{Error, PrimalGraph, Result, TreeDecomposition, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedNode {
    pub kind: NodeKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// A decomposition built only from leaf, introduce, forget and join nodes,
/// with empty bags at the leaves and the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedDecomposition {
    nodes: Vec<NormalizedNode>,
    root: usize,
}

impl NormalizedDecomposition {
    /// Assembles a decomposition from raw nodes. Only the tree shape is
    /// checked here; use [`validate_normalized`] for everything else.
    pub fn from_parts(mut nodes: Vec<NormalizedNode>, root: usize) -> Result<Self> {
        let n = nodes.len();
        if root >= n {
            return Err(Error::InvalidDecomposition("root out of range".into()));
        }
        let mut seen = alloc::vec![false; n];
        let mut stack = alloc::vec![root];
        while let Some(v) = stack.pop() {
            if seen[v] {
                return Err(Error::InvalidDecomposition(alloc::format!("node {v} reached twice")));
            }
            seen[v] = true;
            for &c in &nodes[v].children {
                if c >= n {
                    return Err(Error::InvalidDecomposition(alloc::format!("node {v} has unknown child {c}")));
                }
                stack.push(c);
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidDecomposition(alloc::format!("node {v} is unreachable from the root")));
        }
        for node in &mut nodes {
            node.bag.sort_unstable();
            node.bag.dedup();
        }
        Ok(Self { nodes, root })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &NormalizedNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[NormalizedNode] {
        &self.nodes
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Children before parents.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = alloc::vec![(self.root, false)];
        while let Some((node, expanded)) = stack.pop() {
            if expanded {
                out.push(node);
            } else {
                stack.push((node, true));
                stack.extend(self.nodes[node].children.iter().rev().map(|&c| (c, false)));
            }
        }
        out
    }

    fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = alloc::vec![None; self.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                parent[c] = Some(i);
            }
        }
        parent
    }

    /// Indented text rendering, one node per line:
    /// `<depth*2 spaces><kind> <id>: {v1,v2,...}`.
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        let mut stack = alloc::vec![(self.root, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let node = &self.nodes[id];
            let _ = write!(out, "{:indent$}", "", indent = depth * 2);
            let name = |v: usize| labels.get(v).map(String::as_str).unwrap_or("?");
            let _ = match node.kind {
                NodeKind::Leaf => write!(out, "leaf"),
                NodeKind::Introduce(v) => write!(out, "introduce({})", name(v)),
                NodeKind::Forget(v) => write!(out, "forget({})", name(v)),
                NodeKind::Join => write!(out, "join"),
            };
            let _ = writeln!(out, " {}: {}", id, BagDisplay(&node.bag, labels));
            stack.extend(node.children.iter().rev().map(|&c| (c, depth + 1)));
        }
        out
    }
}

struct Builder {
    nodes: Vec<NormalizedNode>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NormalizedNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn introduce(&mut self, child: usize, v: usize) -> usize {
        let mut bag = self.nodes[child].bag.clone();
        let at = bag.binary_search(&v).unwrap_err();
        bag.insert(at, v);
        self.push(NodeKind::Introduce(v), bag, alloc::vec![child])
    }

    fn forget(&mut self, child: usize, v: usize) -> usize {
        let mut bag = self.nodes[child].bag.clone();
        let at = bag.binary_search(&v).unwrap();
        bag.remove(at);
        self.push(NodeKind::Forget(v), bag, alloc::vec![child])
    }

    /// Walks from `from`'s bag to `target`: forget what is not in `target`,
    /// then introduce what is missing, one element per node.
    fn bridge(&mut self, mut from: usize, target: &[usize]) -> usize {
        let current = self.nodes[from].bag.clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            from = self.forget(from, v);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            from = self.introduce(from, v);
        }
        from
    }
}

/// Turns a tree decomposition into normalized form without changing its
/// width.
pub fn normalize(dec: &TreeDecomposition) -> Result<NormalizedDecomposition> {
    check_connected(dec)?;
    let mut b = Builder { nodes: Vec::new() };
    let mut top = alloc::vec![usize::MAX; dec.len()];
    for t in dec.post_order() {
        let bag = dec.bag(t);
        let mut branches = dec.children(t).iter().map(|&c| top[c]).collect::<Vec<_>>().into_iter();
        let first = match branches.next() {
            None => {
                let leaf = b.push(NodeKind::Leaf, Vec::new(), Vec::new());
                b.bridge(leaf, bag)
            }
            Some(c) => b.bridge(c, bag),
        };
        top[t] = branches.fold(first, |acc, c| {
            let c = b.bridge(c, bag);
            b.push(NodeKind::Join, bag.to_vec(), alloc::vec![acc, c])
        });
    }
    let root = b.bridge(top[dec.root()], &[]);
    Ok(NormalizedDecomposition { nodes: b.nodes, root })
}

fn check_connected(dec: &TreeDecomposition) -> Result<()> {
    let mut tops = alloc::collections::BTreeMap::<usize, usize>::new();
    for t in 0..dec.len() {
        for &v in dec.bag(t) {
            let parent_has = dec.parent(t).is_some_and(|p| dec.bag(p).binary_search(&v).is_ok());
            if !parent_has {
                *tops.entry(v).or_default() += 1;
            }
        }
    }
    match tops.into_iter().find(|&(_, k)| k > 1) {
        Some((v, _)) => Err(Error::InvalidArgument(alloc::format!("decomposition is not connected for vertex {v}"))),
        None => Ok(()),
    }
}

/// Checks the node-type invariants, the empty root bag, and the plain
/// decomposition conditions against `g`.
pub fn validate_normalized(nd: &NormalizedDecomposition, g: &PrimalGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = |node: usize, message: String| out.push(Violation::Node { node, message });
    for (id, node) in nd.nodes.iter().enumerate() {
        let child_bag = |i: usize| nd.nodes[node.children[i]].bag.as_slice();
        match node.kind {
            NodeKind::Leaf => {
                if !node.children.is_empty() || !node.bag.is_empty() {
                    bad(id, "leaf must have no children and an empty bag".into());
                }
            }
            NodeKind::Introduce(v) => {
                if node.children.len() != 1 {
                    bad(id, "introduce must have exactly one child".into());
                    continue;
                }
                let cb = child_bag(0);
                let mut expected = cb.to_vec();
                match expected.binary_search(&v) {
                    Ok(_) => bad(id, alloc::format!("introduced vertex {v} already in child bag")),
                    Err(at) => {
                        expected.insert(at, v);
                        if expected != node.bag {
                            bad(id, "introduce bag must be child bag plus the vertex".into());
                        }
                    }
                }
            }
            NodeKind::Forget(v) => {
                if node.children.len() != 1 {
                    bad(id, "forget must have exactly one child".into());
                    continue;
                }
                let mut expected = child_bag(0).to_vec();
                match expected.binary_search(&v) {
                    Err(_) => bad(id, alloc::format!("forgotten vertex {v} not in child bag")),
                    Ok(at) => {
                        expected.remove(at);
                        if expected != node.bag {
                            bad(id, "forget bag must be child bag minus the vertex".into());
                        }
                    }
                }
            }
            NodeKind::Join => {
                if node.children.len() != 2 {
                    bad(id, "join must have exactly two children".into());
                    continue;
                }
                if child_bag(0) != node.bag.as_slice() || child_bag(1) != node.bag.as_slice() {
                    bad(id, "join children must carry the join's bag".into());
                }
            }
        }
    }
    if !nd.nodes[nd.root].bag.is_empty() {
        bad(nd.root, "root bag must be empty".into());
    }
    let bags = nd.nodes.iter().map(|n| n.bag.clone()).collect();
    match TreeDecomposition::new(bags, nd.parents()) {
        Ok(td) => out.extend(td.validate(g)),
        Err(e) => out.push(Violation::Node { node: nd.root, message: alloc::format!("{e}") }),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::tests::example_one;
    use alloc::vec;

    #[test]
    fn empty_bag_becomes_a_leaf() {
        let td = TreeDecomposition::new(vec![vec![]], vec![None]).unwrap();
        let nd = normalize(&td).unwrap();
        assert_eq!(nd.len(), 1);
        assert_eq!(nd.node(nd.root()).kind, NodeKind::Leaf);
        assert!(validate_normalized(&nd, &PrimalGraph::new(0)).is_empty());
    }

    #[test]
    fn singleton_bag() {
        let td = TreeDecomposition::new(vec![vec![0]], vec![None]).unwrap();
        let nd = normalize(&td).unwrap();
        let root = nd.node(nd.root());
        assert_eq!(root.kind, NodeKind::Forget(0));
        let mid = nd.node(root.children[0]);
        assert_eq!(mid.kind, NodeKind::Introduce(0));
        assert_eq!(nd.node(mid.children[0]).kind, NodeKind::Leaf);
        assert_eq!(nd.len(), 3);
    }

    #[test]
    fn paper_decomposition_normalizes() {
        let g = PrimalGraph::from_af(&example_one());
        let td = TreeDecomposition::new(
            vec![vec![2, 3], vec![1, 2], vec![0, 1], vec![3, 4], vec![4, 5, 6]],
            vec![None, Some(0), Some(1), Some(0), Some(3)],
        )
        .unwrap();
        let nd = normalize(&td).unwrap();
        assert!(validate_normalized(&nd, &g).is_empty(), "{:?}", validate_normalized(&nd, &g));
        assert_eq!(nd.width(), 2);
        assert_eq!(nd.nodes().iter().filter(|n| n.kind == NodeKind::Join).count(), 1);
    }

    #[test]
    fn wide_nodes_are_binarized() {
        let mut g = PrimalGraph::new(4);
        for v in 1..4 {
            g.add_edge(0, v);
        }
        let td = TreeDecomposition::new(
            vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]],
            vec![None, Some(0), Some(0), Some(0)],
        )
        .unwrap();
        let nd = normalize(&td).unwrap();
        assert!(validate_normalized(&nd, &g).is_empty());
        assert_eq!(nd.nodes().iter().filter(|n| n.kind == NodeKind::Join).count(), 2);
        assert_eq!(nd.width(), td.width());
    }

    #[test]
    fn join_with_unequal_children_is_reported() {
        let nodes = vec![
            NormalizedNode { kind: NodeKind::Leaf, bag: vec![], children: vec![] },
            NormalizedNode { kind: NodeKind::Introduce(0), bag: vec![0], children: vec![0] },
            NormalizedNode { kind: NodeKind::Leaf, bag: vec![], children: vec![] },
            NormalizedNode { kind: NodeKind::Join, bag: vec![0], children: vec![1, 2] },
            NormalizedNode { kind: NodeKind::Forget(0), bag: vec![], children: vec![3] },
        ];
        let nd = NormalizedDecomposition::from_parts(nodes, 4).unwrap();
        let v = validate_normalized(&nd, &PrimalGraph::new(1));
        assert_eq!(v.len(), 1);
        assert!(matches!(&v[0], Violation::Node { node: 3, .. }));
    }

    #[test]
    fn non_empty_root_is_reported() {
        let nodes = vec![
            NormalizedNode { kind: NodeKind::Leaf, bag: vec![], children: vec![] },
            NormalizedNode { kind: NodeKind::Introduce(0), bag: vec![0], children: vec![0] },
        ];
        let nd = NormalizedDecomposition::from_parts(nodes, 1).unwrap();
        let v = validate_normalized(&nd, &PrimalGraph::new(1));
        assert_eq!(v, vec![Violation::Node { node: 1, message: "root bag must be empty".into() }]);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let td =
            TreeDecomposition::new(vec![vec![1], vec![0, 1], vec![0, 1, 2]], vec![None, Some(0), Some(0)]).unwrap();
        assert!(matches!(normalize(&td), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn render_prefixes_kind() {
        let td = TreeDecomposition::new(vec![vec![0]], vec![None]).unwrap();
        let nd = normalize(&td).unwrap();
        let labels = vec![String::from("a")];
        assert_eq!(nd.render(&labels), "forget(a) 2: {}\n  introduce(a) 1: {a}\n    leaf 0: {}\n");
    }
}
