use argtd_core::{decompose, elimination_order, normalize, validate_normalized, Heuristic, PrimalGraph};
use proptest::prelude::*;

fn graph(n: usize, edges: &[(usize, usize)]) -> PrimalGraph {
    let mut g = PrimalGraph::new(n);
    for &(u, v) in edges {
        g.add_edge(u % n, v % n);
    }
    g
}

fn arb_graph() -> impl Strategy<Value = PrimalGraph> {
    (1usize..=50).prop_flat_map(|n| prop::collection::vec((0..n, 0..n), 0..=3 * n).prop_map(move |e| graph(n, &e)))
}

/// Size of a largest clique, by brute force over subsets.
fn clique_number(g: &PrimalGraph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|&s| {
            let vs: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
            vs.iter().all(|&a| vs.iter().all(|&b| a == b || g.has_edge(a, b)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn heuristic_decompositions_are_valid(g in arb_graph(), seed in 0u64..4) {
        for h in Heuristic::ALL {
            let order = elimination_order(&g, h, seed);
            let td = decompose(&g, &order).unwrap();
            prop_assert!(td.validate(&g).is_empty());
            prop_assert!(td.len() <= g.vertex_count().max(1));
            let nd = normalize(&td).unwrap();
            prop_assert!(validate_normalized(&nd, &g).is_empty());
            prop_assert_eq!(nd.width(), td.width());
        }
    }

    #[test]
    fn width_is_at_least_planted_clique(n in 4usize..=14, k in 2usize..=5, extra in prop::collection::vec((0usize..14, 0usize..14), 0..20)) {
        let k = k.min(n);
        let mut g = graph(n, &extra);
        for u in 0..k {
            for v in u + 1..k {
                g.add_edge(u, v);
            }
        }
        let omega = clique_number(&g);
        prop_assert!(omega >= k);
        for h in Heuristic::ALL {
            let td = decompose(&g, &elimination_order(&g, h, 0)).unwrap();
            prop_assert!(td.width() + 1 >= omega);
        }
    }
}

#[test]
fn forget_events_close_every_path() {
    let mut g = PrimalGraph::new(6);
    for (u, v) in [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)] {
        g.add_edge(u, v);
    }
    let nd = normalize(&decompose(&g, &elimination_order(&g, Heuristic::MinFill, 0)).unwrap()).unwrap();
    // Walk every leaf-to-root path and check that introduce/forget alternate
    // and nothing is left at the root.
    let mut parent = vec![None; nd.len()];
    for (i, node) in nd.nodes().iter().enumerate() {
        for &c in &node.children {
            parent[c] = Some(i);
        }
    }
    for leaf in (0..nd.len()).filter(|&i| nd.node(i).children.is_empty()) {
        let mut live = std::collections::BTreeSet::new();
        let mut cur = Some(leaf);
        while let Some(id) = cur {
            match nd.node(id).kind {
                argtd_core::NodeKind::Introduce(v) => assert!(live.insert(v)),
                argtd_core::NodeKind::Forget(v) => assert!(live.remove(&v)),
                _ => {}
            }
            assert_eq!(live.iter().copied().collect::<Vec<_>>(), nd.node(id).bag);
            cur = parent[id];
        }
        assert!(live.is_empty());
    }
}
