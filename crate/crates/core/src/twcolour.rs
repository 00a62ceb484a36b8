//! Strongly nonrepetitive colourings from tree-decompositions.
//!
//! A graph with a width-`k` decomposition is coloured with at most `4^k`
//! colours. One level of the construction:
//!
//! 1. complete every bag to a clique, then per component take a BFS layering
//!    from the least vertex;
//! 2. the intra-layer edges form a graph `H` with a width-`(k-1)`
//!    decomposition (see [`layer_td`]), which is coloured recursively (`φ1`);
//! 3. layers are coloured along a path by [`path_colouring_4`] (`φ2`).
//!
//! The colour of `v` is `φ1(v) * 4 + φ2(depth(v))`, so the outermost level is
//! the least significant base-4 digit of the code. Codes are always below
//! `4^k`, which is the declared palette; [`Colouring::distinct`] reports how
//! many codes actually occur.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, induced_subgraph, Graph, VertexSet};
use crate::layering::{bfs_layering, validate_layering, Layering};
use crate::treedecomp::{
    chordal_completion, is_chordal, restrict_td, simplify_td, validate_td, width,
    TreeDecomposition,
};
use crate::words::path_colouring_4;

/// Colour per vertex, each below `palette`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawColouring")]
pub struct Colouring {
    colours: Vec<usize>,
    palette: usize,
}

#[derive(Deserialize)]
struct RawColouring {
    colours: Vec<usize>,
    #[serde(default)]
    palette: Option<usize>,
}

impl TryFrom<RawColouring> for Colouring {
    type Error = Error;
    fn try_from(raw: RawColouring) -> Result<Self> {
        match raw.palette {
            Some(p) => Colouring::new(raw.colours, p),
            None => Ok(Colouring::from_colours(raw.colours)),
        }
    }
}

impl Colouring {
    pub fn new(colours: Vec<usize>, palette: usize) -> Result<Self> {
        if let Some(&c) = colours.iter().find(|&&c| c >= palette) {
            return Err(Error::InvalidColouring(format!(
                "colour {c} outside palette of size {palette}"
            )));
        }
        Ok(Colouring { colours, palette })
    }

    /// Palette is one more than the largest colour (0 when empty).
    pub fn from_colours(colours: Vec<usize>) -> Self {
        let palette = colours.iter().max().map_or(0, |&c| c + 1);
        Colouring { colours, palette }
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Number of distinct colours that occur.
    pub fn distinct(&self) -> usize {
        let mut c = self.colours.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

/// Colours `g` with at most `4^width(td)` colours so that every repetitive
/// lazy walk is boring.
pub fn strongly_nonrepetitive_colouring(g: &Graph, td: &TreeDecomposition) -> Result<Colouring> {
    if let Some(v) = validate_td(g, td) {
        return Err(Error::InvalidDecomposition(format!("{v:?}")));
    }
    if g.n() == 0 {
        return Colouring::new(Vec::new(), 1);
    }
    let k = width(td)?;
    let palette = 4usize
        .checked_pow(k as u32)
        .ok_or_else(|| Error::InvalidArgument(format!("width {k} gives a palette beyond usize")))?;
    let codes = colour_levels(g, &simplify_td(td), k);
    Colouring::new(codes, palette)
}

/// `td` must be valid for `g` with width at most `levels`.
fn colour_levels(g: &Graph, td: &TreeDecomposition, levels: usize) -> Vec<usize> {
    let mut codes = vec![0; g.n()];
    if levels == 0 || g.edge_count() == 0 {
        return codes;
    }
    let gc = chordal_completion(g, td);
    for comp in connected_components(&gc) {
        let (sub, map) = induced_subgraph(&gc, &comp).expect("component is in range");
        let sub_td = simplify_td(&restrict_td(td, &map));
        let layering = bfs_layering(&sub, 0).expect("component is connected");
        let (h, h_td) = intra_layer_graph(&sub, &sub_td, &layering);
        let inner = colour_levels(&h, &h_td, levels - 1);
        let outer = path_colouring_4(layering.len());
        for (local, &v) in map.new_to_old.iter().enumerate() {
            let phi2 = outer.colours()[layering.depth(local)] as usize;
            codes[v] = inner[local] * 4 + phi2;
        }
    }
    codes
}

/// The spanning subgraph of same-depth edges, with the per-layer
/// decompositions chained into one decomposition of it.
fn intra_layer_graph(g: &Graph, td: &TreeDecomposition, l: &Layering) -> (Graph, TreeDecomposition) {
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| l.depth(u) == l.depth(v));
    let h = Graph::from_edges(g.n(), edges).expect("subgraph of a simple graph");
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut tree = Vec::new();
    for i in 0..l.len() {
        let part = layer_td_unchecked(td, l, i);
        let offset = bags.len();
        if offset > 0 {
            tree.push((0, offset));
        }
        tree.extend(part.tree_edges().iter().map(|&(x, y)| (x + offset, y + offset)));
        let layer = l.layer(i);
        bags.extend(
            part.bags()
                .iter()
                .map(|bag| bag.iter().map(|&j| layer[j]).collect()),
        );
    }
    let joined = TreeDecomposition::new(g.n(), bags, tree).expect("chain of trees");
    debug_assert_eq!(validate_td(&h, &joined), None);
    (h, simplify_td(&joined))
}

/// Decomposition of `G[V_i]`, vertices numbered by their rank inside layer `i`,
/// with width at most `width(td) - 1`.
///
/// Contracting the earlier layers (connected, since they hold the root) to one
/// vertex `u` makes `u` adjacent to all of `V_i`. Mapping bags through the
/// contraction, the nodes whose bags hold `u` form a subtree that still covers
/// `G[V_i]` (subtrees pairwise meeting share a node), and deleting `u` from
/// each of those bags lowers the width by one.
pub fn layer_td(
    g_chordal: &Graph,
    td: &TreeDecomposition,
    l: &Layering,
    i: usize,
) -> Result<TreeDecomposition> {
    if let Some(v) = validate_td(g_chordal, td) {
        return Err(Error::InvalidDecomposition(format!("{v:?}")));
    }
    if !is_chordal(g_chordal) {
        return Err(Error::InvalidArgument("graph is not chordal".into()));
    }
    check_bfs_layering(g_chordal, l)?;
    if i >= l.len() {
        return Err(Error::InvalidArgument(format!(
            "layer {i} does not exist; there are {}",
            l.len()
        )));
    }
    if i > 0 && width(td)? == 0 {
        return Err(Error::InvalidArgument("decomposition of width 0 has no deeper layers".into()));
    }
    let out = layer_td_unchecked(td, l, i);
    debug_assert_eq!(
        validate_td(
            &induced_subgraph(g_chordal, &VertexSet::new(l.layer(i).iter().copied()))?.0,
            &out
        ),
        None
    );
    Ok(out)
}

fn check_bfs_layering(g: &Graph, l: &Layering) -> Result<()> {
    if let Some((u, v)) = validate_layering(g, l)? {
        return Err(Error::InvalidLayering(format!("edge ({u}, {v}) skips a layer")));
    }
    if g.n() > 0 && l.layer(0).len() != 1 {
        return Err(Error::InvalidLayering("first layer must be a single root".into()));
    }
    for v in 0..g.n() {
        let d = l.depth(v);
        if d > 0 && !g.neighbours(v).iter().any(|&w| l.depth(w) + 1 == d) {
            return Err(Error::InvalidLayering(format!(
                "vertex {v} has no neighbour one layer up"
            )));
        }
    }
    Ok(())
}

fn layer_td_unchecked(td: &TreeDecomposition, l: &Layering, i: usize) -> TreeDecomposition {
    let layer = l.layer(i);
    if i == 0 {
        return TreeDecomposition::single_bag(1);
    }
    let mut rank = vec![usize::MAX; l.vertex_count()];
    for (j, &v) in layer.iter().enumerate() {
        rank[v] = j;
    }
    let holds_u: Vec<bool> = td
        .bags()
        .iter()
        .map(|bag| bag.iter().any(|&v| l.depth(v) < i))
        .collect();
    let mut id = vec![usize::MAX; td.node_count()];
    let mut bags = Vec::new();
    for (x, bag) in td.bags().iter().enumerate() {
        if holds_u[x] {
            id[x] = bags.len();
            bags.push(
                bag.iter()
                    .filter(|&&v| l.depth(v) == i)
                    .map(|&v| rank[v])
                    .collect(),
            );
        }
    }
    let edges = td
        .tree_edges()
        .iter()
        .filter(|&&(x, y)| holds_u[x] && holds_u[y])
        .map(|&(x, y)| (id[x], id[y]))
        .collect();
    let out = TreeDecomposition::new(layer.len(), bags, edges)
        .expect("nodes holding a connected branch set form a subtree");
    simplify_td(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedecomp::heuristic_td;
    use crate::verify::{find_bad_lazy_walk, find_repetitive_path, is_proper};

    #[test]
    fn k1_gets_one_colour() {
        let c = strongly_nonrepetitive_colouring(&Graph::complete(1), &TreeDecomposition::single_bag(1)).unwrap();
        assert_eq!(c.colours(), &[0]);
        assert_eq!(c.palette(), 1);
    }

    #[test]
    fn path_ten_is_nonrepetitive() {
        let g = Graph::path(10);
        let td = heuristic_td(&g);
        assert_eq!(width(&td).unwrap(), 1);
        let c = strongly_nonrepetitive_colouring(&g, &td).unwrap();
        assert!(c.palette() <= 16);
        assert!(find_repetitive_path(&g, &c, 10).unwrap().pass);
        assert!(find_bad_lazy_walk(&g, &c, 10).unwrap().pass);
    }

    #[test]
    fn k4_single_bag() {
        let g = Graph::complete(4);
        let c = strongly_nonrepetitive_colouring(&g, &TreeDecomposition::single_bag(4)).unwrap();
        assert_eq!(c.palette(), 64);
        assert_eq!(c.distinct(), 4);
        assert!(is_proper(&g, &c).unwrap().pass);
    }

    #[test]
    fn k4_layer_one() {
        let g = Graph::complete(4);
        let td = TreeDecomposition::single_bag(4);
        let l = bfs_layering(&g, 0).unwrap();
        let t0 = layer_td(&g, &td, &l, 0).unwrap();
        assert_eq!(t0.bags(), &[vec![0]]);
        let t1 = layer_td(&g, &td, &l, 1).unwrap();
        assert_eq!(t1.bags(), &[vec![0, 1, 2]]);
        assert_eq!(width(&t1).unwrap(), 2);
    }

    #[test]
    fn fan_layers_have_width_one() {
        // apex 0 joined to the path 1..=6: a 2-tree
        let mut edges: Vec<_> = (1..7).map(|v| (0, v)).collect();
        edges.extend((1..6).map(|v| (v, v + 1)));
        let g = Graph::from_edges(7, edges).unwrap();
        let td = heuristic_td(&g);
        assert_eq!(width(&td).unwrap(), 2);
        let gc = chordal_completion(&g, &td);
        for root in 0..7 {
            let l = bfs_layering(&gc, root).unwrap();
            for i in 0..l.len() {
                let t = layer_td(&gc, &td, &l, i).unwrap();
                let (sub, _) = induced_subgraph(&gc, &VertexSet::new(l.layer(i).iter().copied())).unwrap();
                assert_eq!(validate_td(&sub, &t), None);
                assert!(width(&t).unwrap() <= 1);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = Graph::path(3);
        let bad = TreeDecomposition::new(3, vec![vec![0, 1]], vec![]).unwrap();
        assert!(strongly_nonrepetitive_colouring(&g, &bad).is_err());
        let c4 = Graph::cycle(4);
        let td = heuristic_td(&c4);
        let l = bfs_layering(&c4, 0).unwrap();
        assert!(layer_td(&c4, &td, &l, 1).is_err());
        let p = Layering::from_layers(vec![vec![0, 1], vec![2]]).unwrap();
        assert!(layer_td(&g, &heuristic_td(&g), &p, 1).is_err());
    }

    #[test]
    fn deterministic_and_disconnected() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)]).unwrap();
        let td = heuristic_td(&g);
        let a = strongly_nonrepetitive_colouring(&g, &td).unwrap();
        let b = strongly_nonrepetitive_colouring(&g, &td).unwrap();
        assert_eq!(a, b);
        assert!(find_repetitive_path(&g, &a, 6).unwrap().pass);
        assert!(find_bad_lazy_walk(&g, &a, 10).unwrap().pass);
    }

    #[test]
    fn colouring_serde_checks_palette() {
        let c = Colouring::new(vec![0, 2], 3).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"colours":[0,2],"palette":3}"#);
        assert!(serde_json::from_str::<Colouring>(r#"{"colours":[3],"palette":3}"#).is_err());
        let implied: Colouring = serde_json::from_str(r#"{"colours":[0,2]}"#).unwrap();
        assert_eq!(implied.palette(), 3);
    }
}
