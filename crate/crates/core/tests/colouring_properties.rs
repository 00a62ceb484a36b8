use nonrep_core::corpus::{random_chordal, random_partial_ktree, random_triangulation, rng};
use nonrep_core::graph::{induced_subgraph, VertexSet};
use nonrep_core::layering::bfs_layering;
use nonrep_core::planar::{colour_planar, compute_product_structure, validate_product_structure};
use nonrep_core::product::{compose_path_factor, strong_product};
use nonrep_core::treedecomp::{chordal_completion, heuristic_td, validate_td, width};
use nonrep_core::twcolour::{layer_td, strongly_nonrepetitive_colouring, Colouring};
use nonrep_core::verify::*;
use nonrep_core::words::{path_colouring_4, verify_boring};
use nonrep_core::Graph;
use proptest::prelude::*;
use rand::Rng;

/// Every simple path of even order, by brute-force DFS, tested for equal
/// halves.
fn has_repetitive_path(g: &Graph, colours: &[usize], max_order: usize) -> bool {
    fn dfs(g: &Graph, colours: &[usize], max_order: usize, path: &mut Vec<usize>) -> bool {
        let k = path.len();
        if k.is_multiple_of(2) && k > 0 && colours_repeat(colours, path) {
            return true;
        }
        if k == max_order {
            return false;
        }
        let last = *path.last().unwrap();
        for &w in g.neighbours(last) {
            if !path.contains(&w) {
                path.push(w);
                if dfs(g, colours, max_order, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..g.n()).any(|s| dfs(g, colours, max_order, &mut vec![s]))
}

fn colours_repeat(colours: &[usize], seq: &[usize]) -> bool {
    let h = seq.len() / 2;
    (0..h).all(|i| colours[seq[i]] == colours[seq[h + i]])
}

/// Brute force over every colouring with `p` colours.
fn brute_pi(g: &Graph, max_p: usize) -> Option<usize> {
    (1..=max_p).find(|&p| {
        let total = p.pow(g.n() as u32);
        (0..total).any(|mut code| {
            let colours: Vec<usize> = (0..g.n())
                .map(|_| {
                    let c = code % p;
                    code /= p;
                    c
                })
                .collect();
            !has_repetitive_path(g, &colours, g.n())
        })
    })
}

fn graph_and_colours(max_n: usize, max_p: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (1..=max_n, 1..=max_p).prop_flat_map(|(n, p)| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(prop::bool::weighted(0.4), pairs),
            prop::collection::vec(0..p, n),
        )
            .prop_map(move |(keep, colours)| {
                let all = (0..n).flat_map(|v| (0..v).map(move |u| (u, v)));
                let g = Graph::from_edges(n, all.zip(keep).filter(|&(_, k)| k).map(|(e, _)| e)).unwrap();
                (g, colours)
            })
    })
}

proptest! {
    #[test]
    fn path_search_agrees_with_brute_force((g, colours) in graph_and_colours(9, 4), cap in 1usize..6) {
        let c = Colouring::from_colours(colours.clone());
        let v = find_repetitive_path(&g, &c, 2 * cap).unwrap();
        prop_assert_eq!(v.pass, !has_repetitive_path(&g, &colours, 2 * cap));
        if let Some(p) = &v.counterexample {
            prop_assert!(p.len() % 2 == 0 && p.len() <= 2 * cap);
            prop_assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
            prop_assert!(colours_repeat(&colours, p));
        }
    }

    #[test]
    fn bad_walks_found_are_bad((g, colours) in graph_and_colours(8, 3), cap in 1usize..5) {
        let c = Colouring::from_colours(colours.clone());
        let v = find_bad_lazy_walk(&g, &c, 2 * cap).unwrap();
        if let Some(w) = &v.counterexample {
            let h = w.len() / 2;
            prop_assert!(w.len() % 2 == 0 && w.len() <= 2 * cap);
            prop_assert!(w.windows(2).all(|x| g.is_step(x[0], x[1])));
            prop_assert!(colours_repeat(&colours, w));
            prop_assert!((0..h).all(|i| w[i] != w[h + i]));
        }
        // a repetitive path is itself a bad lazy walk
        if !find_repetitive_path(&g, &c, 2 * cap).unwrap().pass {
            prop_assert!(!v.pass);
        }
    }

    #[test]
    fn twcolour_is_clean_on_small_graphs((g, _) in graph_and_colours(9, 1)) {
        let td = heuristic_td(&g);
        let c = strongly_nonrepetitive_colouring(&g, &td).unwrap();
        prop_assert_eq!(c.palette(), 4usize.pow(width(&td).unwrap() as u32));
        prop_assert!(is_proper(&g, &c).unwrap().pass);
        let paths = find_repetitive_path(&g, &c, 2 * (g.n() / 2).max(1)).unwrap();
        prop_assert!(paths.pass && paths.complete);
        prop_assert!(find_bad_lazy_walk(&g, &c, 10).unwrap().pass);
    }

    #[test]
    fn walks_in_a_product_project_to_walks(seed in any::<u64>(), m in 1usize..6, len in 1usize..20) {
        let mut r = rng(seed);
        let (g, _) = random_partial_ktree(&mut r, 8, 2, 0.7).unwrap();
        let (p, idx) = strong_product(&g, &Graph::path(m)).unwrap();
        let mut v = r.gen_range(0..p.n());
        for _ in 0..len {
            let nb = p.neighbours(v);
            let w = if nb.is_empty() || r.gen_bool(0.2) { v } else { nb[r.gen_range(0..nb.len())] };
            let ((a1, b1), (a2, b2)) = (idx.pair(v), idx.pair(w));
            prop_assert!(g.is_step(a1, a2));
            prop_assert!(b1.abs_diff(b2) <= 1);
            v = w;
        }
    }
}

#[test]
fn exact_pi_agrees_with_brute_force() {
    for n in 1..=5 {
        for g in nonrep_core::corpus::connected_graphs(n).unwrap() {
            let expected = brute_pi(&g, 5).map_or(ExactPi::ExceedsCap, ExactPi::Exact);
            assert_eq!(exact_pi(&g, 5).unwrap(), expected, "{:?}", g.edges());
        }
    }
}

#[test]
fn path_colouring_is_consistent_and_boring() {
    let long = path_colouring_4(200);
    assert!(long.is_proper());
    for n in 0..=200 {
        let c = path_colouring_4(n);
        assert_eq!(c.colours(), &long.colours()[..n]);
        if n <= 60 {
            for cap in [2, 6, 10, 14] {
                assert_eq!(verify_boring(&c, cap).unwrap(), None, "n = {n}, cap {cap}");
            }
        }
    }
}

#[test]
fn path_factor_keeps_the_colouring_clean() {
    let mut r = rng(21);
    for i in 0..12 {
        let (g, td) = random_partial_ktree(&mut r, 6 + i, 1 + i % 3, 0.8).unwrap();
        let phi = strongly_nonrepetitive_colouring(&g, &td).unwrap();
        let (p, idx) = strong_product(&g, &Graph::path(4)).unwrap();
        let c = compose_path_factor(&phi, 4, &idx).unwrap();
        assert!(find_repetitive_path(&p, &c, 10).unwrap().pass, "case {i}");
        assert!(find_bad_lazy_walk(&p, &c, 8).unwrap().pass, "case {i}");
    }
}

#[test]
fn layer_decompositions_are_valid() {
    let mut r = rng(31);
    for i in 0..80 {
        let (g, td) = random_partial_ktree(&mut r, 5 + i % 20, 1 + i % 4, 0.6).unwrap();
        let Some(root) = (0..g.n()).find(|&v| g.degree(v) > 0) else { continue };
        let chordal = chordal_completion(&g, &td);
        // BFS layering needs a connected graph; use the root's component
        let comp = nonrep_core::graph::connected_components(&chordal)
            .into_iter()
            .find(|c| c.contains(root))
            .unwrap();
        let (h, map) = induced_subgraph(&chordal, &comp).unwrap();
        let h_td = nonrep_core::treedecomp::restrict_td(&td, &map);
        let l = bfs_layering(&h, 0).unwrap();
        for layer in 0..l.len() {
            let out = layer_td(&h, &h_td, &l, layer).unwrap();
            let (sub, _) = induced_subgraph(&h, &VertexSet::new(l.layer(layer).iter().copied())).unwrap();
            assert_eq!(validate_td(&sub, &out), None, "case {i}, layer {layer}");
            if layer > 0 {
                assert!(width(&out).unwrap() < width(&h_td).unwrap(), "case {i}, layer {layer}");
            }
        }
    }
}

#[test]
fn chordal_layer_decompositions_from_every_root() {
    let mut r = rng(41);
    for i in 0..60 {
        let g = random_chordal(&mut r, 3 + i % 12, 4).unwrap();
        let td = heuristic_td(&g);
        for root in 0..g.n() {
            let l = bfs_layering(&g, root).unwrap();
            for layer in 0..l.len() {
                let out = layer_td(&g, &td, &l, layer).unwrap();
                let (sub, _) = induced_subgraph(&g, &VertexSet::new(l.layer(layer).iter().copied())).unwrap();
                assert_eq!(validate_td(&sub, &out), None);
            }
        }
    }
}

#[test]
fn planar_structures_hold_on_random_triangulations() {
    let mut r = rng(51);
    for i in 0..60 {
        let n = 4 + i % 40;
        let g = random_triangulation(&mut r, n, 3 * n).unwrap();
        let ps = compute_product_structure(&g).unwrap();
        let s = &ps.structure;
        assert_eq!(s.ell(), 3);
        assert_eq!(validate_product_structure(&g, s).unwrap(), None);
        assert_eq!(validate_td(s.h(), &ps.h_td), None);
        assert!(width(&ps.h_td).unwrap() <= 3);
        assert!(s.h().n() <= g.n());
        let out = colour_planar(&g, s, Some(&ps.h_td)).unwrap();
        assert!(out.certified && out.colouring.palette() as u64 <= out.bound);
        if i % 5 == 0 {
            assert!(find_repetitive_path(&g, &out.colouring, 10).unwrap().pass);
            assert!(find_bad_lazy_walk(&g, &out.colouring, 8).unwrap().pass);
        }
    }
}
