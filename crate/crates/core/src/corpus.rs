//! Test and benchmark graphs: named solids, every small connected graph up to
//! isomorphism, and seeded random partial k-trees, chordal graphs and planar
//! triangulations.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedecomp::TreeDecomposition;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `K_{2,2,2}`: vertex `v` is opposite `v + 3`.
pub fn octahedron() -> Graph {
    let edges = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
        .filter(|&(u, v)| v != u + 3);
    Graph::from_edges(6, edges).expect("octahedron")
}

/// Apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::with_capacity(30);
    for i in 0..5 {
        let (up, up_next) = (1 + i, 1 + (i + 1) % 5);
        let (low, low_next) = (6 + i, 6 + (i + 1) % 5);
        edges.extend([(0, up), (up, up_next), (low, low_next), (up, low), (up_next, low), (low, 11)]);
    }
    Graph::from_edges(12, edges).expect("icosahedron")
}

pub const MAX_ENUMERATED_ORDER: usize = 8;

/// Every connected graph on `n` vertices, one per isomorphism class, in order
/// of canonical code. Every connected graph has a vertex whose removal keeps
/// it connected, so the classes on `n` vertices arise from those on `n - 1`
/// by adding a vertex with a nonempty neighbourhood.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATED_ORDER {
        return Err(Error::TooLarge {
            n,
            limit: MAX_ENUMERATED_ORDER,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let g = decode(code, m - 1);
            for mask in 1u64..(1 << (m - 1)) {
                let extra = (0..m - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, m - 1));
                let h = Graph::from_edges(m, g.edges().iter().copied().chain(extra)).expect("simple");
                next.insert(canonical_code(&h));
            }
        }
        level = next;
    }
    Ok(level.into_iter().map(|c| decode(c, n)).collect())
}

fn pair_bit(u: usize, v: usize) -> usize {
    // position of (u, v), u < v, in the upper triangle ordered by v then u
    v * (v - 1) / 2 + u
}

fn decode(code: u64, n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .filter(|&(u, v)| code >> pair_bit(u, v) & 1 == 1);
    Graph::from_edges(n, edges).expect("decoded graph is simple")
}

/// Least adjacency code over all relabellings that sort vertices by
/// (degree, sorted neighbour degrees). Those keys are isomorphism invariant,
/// so only permutations within equal-key classes need to be tried.
fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    let key = |v: usize| {
        let mut nd: Vec<usize> = g.neighbours(v).iter().map(|&w| g.degree(w)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if key(c[0]) == key(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut label = vec![0usize; n];
    let mut best = u64::MAX;
    search_labels(g, &mut classes, 0, 0, &mut label, &mut best);
    best
}

fn search_labels(
    g: &Graph,
    classes: &mut [Vec<usize>],
    ci: usize,
    next_label: usize,
    label: &mut [usize],
    best: &mut u64,
) {
    if ci == classes.len() {
        let code = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (label[u].min(label[v]), label[u].max(label[v]));
                1u64 << pair_bit(a, b)
            })
            .sum();
        *best = (*best).min(code);
        return;
    }
    let len = classes[ci].len();
    permute(&mut classes[ci].clone(), 0, &mut |perm| {
        for (k, &v) in perm.iter().enumerate() {
            label[v] = next_label + k;
        }
        search_labels(g, classes, ci + 1, next_label + len, label, best);
    });
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// A random `k`-tree on `n ≥ k + 1` vertices with each edge then kept with
/// probability `keep`, returned with the decomposition that built it (width `k`).
pub fn random_partial_ktree<R: Rng>(rng: &mut R, n: usize, k: usize, keep: f64) -> Result<(Graph, TreeDecomposition)> {
    if n < k + 1 {
        return Err(Error::InvalidArgument(format!("a {k}-tree needs at least {} vertices", k + 1)));
    }
    let mut bags: Vec<Vec<usize>> = vec![(0..=k).collect()];
    let mut tree = Vec::new();
    let mut edges: Vec<(usize, usize)> = (0..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v))).collect();
    for v in k + 1..n {
        let at = rng.gen_range(0..bags.len());
        let mut bag = bags[at].clone();
        bag.remove(rng.gen_range(0..bag.len()));
        edges.extend(bag.iter().map(|&u| (u, v)));
        bag.push(v);
        tree.push((at, bags.len()));
        bags.push(bag);
    }
    edges.retain(|_| rng.gen_bool(keep));
    let g = Graph::from_edges(n, edges)?;
    Ok((g, TreeDecomposition::new(n, bags, tree)?))
}

/// A random connected chordal graph: each new vertex is joined to a nonempty
/// subset of a random existing maximal clique, at most `max_clique - 1` large.
pub fn random_chordal<R: Rng>(rng: &mut R, n: usize, max_clique: usize) -> Result<Graph> {
    if max_clique < 2 && n > 1 {
        return Err(Error::InvalidArgument("connected graphs need cliques of size 2".into()));
    }
    let mut cliques: Vec<Vec<usize>> = vec![vec![0]];
    let mut edges = Vec::new();
    for v in 1..n {
        let base = cliques[rng.gen_range(0..cliques.len())].clone();
        let size = rng.gen_range(1..=base.len().min(max_clique - 1));
        let mut chosen: Vec<usize> = base.choose_multiple(rng, size).copied().collect();
        chosen.sort_unstable();
        edges.extend(chosen.iter().map(|&u| (u, v)));
        chosen.push(v);
        cliques.push(chosen);
    }
    Graph::from_edges(n, edges)
}

/// A random planar triangulation on `n ≥ 4` vertices: vertices are inserted
/// into random faces of `K_4`, then `flips` random edge flips are attempted,
/// and finally the vertices are shuffled.
pub fn random_triangulation<R: Rng>(rng: &mut R, n: usize, flips: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidArgument("random triangulations start from K_4".into()));
    }
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| if v < 4 { (0..4).filter(|&w| w != v).collect() } else { BTreeSet::new() })
        .collect();
    for v in 4..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[i];
        faces[i] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([a, c, v]);
        for x in [a, b, c] {
            adj[x].insert(v);
            adj[v].insert(x);
        }
    }
    for _ in 0..flips {
        let i = rng.gen_range(0..faces.len());
        let f = faces[i];
        let k = rng.gen_range(0..3);
        let (a, b, c) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
        let Some(j) = (0..faces.len()).find(|&j| j != i && faces[j].contains(&a) && faces[j].contains(&b)) else {
            continue;
        };
        let d = faces[j].iter().copied().find(|&x| x != a && x != b).unwrap();
        if c == d || adj[c].contains(&d) || adj[a].len() <= 3 || adj[b].len() <= 3 {
            continue;
        }
        adj[a].remove(&b);
        adj[b].remove(&a);
        adj[c].insert(d);
        adj[d].insert(c);
        faces[i] = [c, d, a];
        faces[j] = [c, d, b];
    }
    let mut relabel: Vec<usize> = (0..n).collect();
    relabel.shuffle(rng);
    let edges = (0..n).flat_map(|u| {
        let relabel = &relabel;
        adj[u].iter().filter(move |&&w| w > u).map(move |&w| (relabel[u], relabel[w]))
    });
    Graph::from_edges(n, edges.collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_connected;
    use crate::treedecomp::{is_chordal, validate_td, width};

    #[test]
    fn named_solids() {
        let o = octahedron();
        assert_eq!((o.n(), o.edge_count()), (6, 12));
        assert!((0..6).all(|v| o.degree(v) == 4));
        let i = icosahedron();
        assert_eq!((i.n(), i.edge_count()), (12, 30));
        assert!((0..12).all(|v| i.degree(v) == 5));
    }

    #[test]
    fn connected_graph_counts() {
        // known numbers of connected graphs on 1..=6 vertices
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
        assert!(connected_graphs(4).unwrap().iter().all(is_connected));
    }

    #[test]
    fn partial_ktrees_carry_valid_tds() {
        let mut r = rng(7);
        for n in [4, 10, 30] {
            let (g, td) = random_partial_ktree(&mut r, n, 3, 0.7).unwrap();
            assert_eq!(validate_td(&g, &td), None);
            assert_eq!(width(&td).unwrap(), 3);
        }
        assert!(random_partial_ktree(&mut r, 3, 3, 1.0).is_err());
    }

    #[test]
    fn chordal_graphs_are_chordal() {
        let mut r = rng(1);
        for n in 1..=12 {
            let g = random_chordal(&mut r, n, 4).unwrap();
            assert!(is_chordal(&g) && is_connected(&g));
        }
    }

    #[test]
    fn triangulations_have_3n_minus_6_edges() {
        let mut r = rng(3);
        for n in 4..20 {
            let g = random_triangulation(&mut r, n, 2 * n).unwrap();
            assert_eq!(g.edge_count(), 3 * n - 6);
        }
        assert_eq!(random_triangulation(&mut rng(5), 30, 40).unwrap(), random_triangulation(&mut rng(5), 30, 40).unwrap());
    }
}
