use std::collections::BTreeSet;

use nonrep_core::graph::*;
use nonrep_core::layering::{bfs_layering, validate_layering};
use nonrep_core::product::{join_complete, strong_product};
use nonrep_core::Graph;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |keep| {
            let all = (0..n).flat_map(|v| (0..v).map(move |u| (u, v)));
            Graph::from_edges(n, all.zip(keep).filter(|&(_, k)| k).map(|(e, _)| e)).unwrap()
        })
    })
}

fn connected_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(max_n).prop_map(|g| {
        // chain the components together so every case is connected
        let comps = connected_components(&g);
        let bridges = comps.windows(2).map(|w| (w[0].as_slice()[0], w[1].as_slice()[0]));
        Graph::from_edges(g.n(), g.edges().iter().copied().chain(bridges)).unwrap()
    })
}

/// Plain graph6 encoder for `n < 63`: size byte, then the upper triangle
/// column by column, six bits per character.
fn graph6(g: &Graph) -> String {
    let mut bits = Vec::new();
    for v in 1..g.n() {
        for u in 0..v {
            bits.push(g.has_edge(u, v));
        }
    }
    let mut out = String::from((g.n() as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            x |= (b as u8) << (5 - i);
        }
        out.push((x + 63) as char);
    }
    out
}

proptest! {
    #[test]
    fn edge_list_and_json_round_trip(g in graph_strategy(12)) {
        prop_assert_eq!(&parse_graph(&g.to_edge_list(), GraphFormat::EdgeList).unwrap(), &g);
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Graph>(&json).unwrap(), &g);
    }

    #[test]
    fn graph6_matches_independent_encoder(g in graph_strategy(14)) {
        prop_assert_eq!(parse_graph(&graph6(&g), GraphFormat::Graph6).unwrap(), g);
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted(g in graph_strategy(12)) {
        let mut degree_sum = 0;
        for v in 0..g.n() {
            let nb = g.neighbours(v);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(nb.iter().all(|&w| g.has_edge(w, v) && w != v));
            prop_assert!(g.is_step(v, v));
            degree_sum += g.degree(v);
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn induced_subgraph_keeps_exactly_the_inner_edges(g in graph_strategy(10), mask in any::<u16>()) {
        let s = VertexSet::new((0..g.n()).filter(|&v| mask >> v & 1 == 1));
        let (h, map) = induced_subgraph(&g, &s).unwrap();
        prop_assert_eq!(h.n(), s.len());
        prop_assert_eq!(&map.new_to_old, &s.as_slice().to_vec());
        for a in 0..h.n() {
            for b in 0..h.n() {
                prop_assert_eq!(h.has_edge(a, b), g.has_edge(map.new_to_old[a], map.new_to_old[b]));
            }
        }
        for v in 0..g.n() {
            prop_assert_eq!(map.old_to_new[v].is_some(), s.contains(v));
        }
    }

    #[test]
    fn components_partition_the_vertices(g in graph_strategy(12)) {
        let comps = connected_components(&g);
        let mut seen = BTreeSet::new();
        for c in &comps {
            for v in c.iter() {
                prop_assert!(seen.insert(v));
            }
            let (h, _) = induced_subgraph(&g, c).unwrap();
            prop_assert!(is_connected(&h));
        }
        prop_assert_eq!(seen.len(), g.n());
        for &(u, v) in g.edges() {
            prop_assert!(comps.iter().any(|c| c.contains(u) && c.contains(v)));
        }
        prop_assert_eq!(is_connected(&g), comps.len() <= 1);
    }

    #[test]
    fn contraction_merges_a_connected_set(g in connected_strategy(9), pick in any::<u16>()) {
        prop_assume!(g.n() >= 2);
        // grow a connected set by BFS from 0, keeping vertices by the mask
        let mut set = vec![0usize];
        let mut i = 0;
        while i < set.len() {
            for &w in g.neighbours(set[i]) {
                if pick >> w & 1 == 1 && !set.contains(&w) {
                    set.push(w);
                }
            }
            i += 1;
        }
        let s = VertexSet::new(set);
        let (h, map) = contract_set(&g, &s).unwrap();
        prop_assert_eq!(h.n(), g.n() - s.len() + 1);
        let image = |v: usize| map.old_to_new[v].unwrap();
        let merged = image(s.as_slice()[0]);
        prop_assert!(s.iter().all(|v| image(v) == merged));
        let expected: BTreeSet<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(u, v)| (image(u).min(image(v)), image(u).max(image(v))))
            .filter(|&(a, b)| a != b)
            .collect();
        let actual: BTreeSet<(usize, usize)> = h.edges().iter().copied().collect();
        prop_assert_eq!(actual, expected);
    }

    #[test]
    fn bfs_layers_are_distances(g in connected_strategy(12), root in 0usize..12) {
        prop_assume!(root < g.n());
        let l = bfs_layering(&g, root).unwrap();
        prop_assert_eq!(validate_layering(&g, &l).unwrap(), None);
        for v in 0..g.n() {
            let d = l.depth(v);
            if d > 0 {
                prop_assert!(g.neighbours(v).iter().any(|&w| l.depth(w) + 1 == d));
            } else {
                prop_assert_eq!(v, root);
            }
        }
    }

    #[test]
    fn join_adds_a_universal_clique(g in graph_strategy(8), k in 0usize..4) {
        let j = join_complete(&g, k);
        prop_assert_eq!(j.n(), g.n() + k);
        prop_assert_eq!(j.edge_count(), g.edge_count() + k * g.n() + k * k.saturating_sub(1) / 2);
        for x in g.n()..j.n() {
            prop_assert_eq!(j.degree(x), j.n() - 1);
        }
    }
}

#[test]
fn strong_product_counts_on_all_small_pairs() {
    let small: Vec<Graph> = (1..=5)
        .flat_map(|n| nonrep_core::corpus::connected_graphs(n).unwrap())
        .collect();
    for a in &small {
        for b in &small {
            let (p, idx) = strong_product(a, b).unwrap();
            let (ea, eb) = (a.edge_count(), b.edge_count());
            assert_eq!(p.n(), a.n() * b.n());
            assert_eq!(p.edge_count(), ea * b.n() + a.n() * eb + 2 * ea * eb);
            for x in 0..p.n() {
                for y in x + 1..p.n() {
                    let ((a1, b1), (a2, b2)) = (idx.pair(x), idx.pair(y));
                    assert_eq!(p.has_edge(x, y), a.is_step(a1, a2) && b.is_step(b1, b2));
                }
            }
        }
    }
}
