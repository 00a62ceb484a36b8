//! Strong products, complete joins and the colour pairings that lift
//! strongly nonrepetitive colourings through them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::twcolour::Colouring;
use crate::words::path_colouring_4;

pub const DEFAULT_PRODUCT_LIMIT: usize = 1_000_000;

/// Row-major coordinates of `A ⊠ B`: `(a, b)` has index `a * |V(B)| + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductVertexIndex {
    pub left: usize,
    pub right: usize,
}

impl ProductVertexIndex {
    pub fn new(left: usize, right: usize) -> Self {
        ProductVertexIndex { left, right }
    }

    pub fn len(&self) -> usize {
        self.left * self.right
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.left && b < self.right);
        a * self.right + b
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        debug_assert!(i < self.len());
        (i / self.right, i % self.right)
    }
}

pub fn strong_product(a: &Graph, b: &Graph) -> Result<(Graph, ProductVertexIndex)> {
    strong_product_with_limit(a, b, DEFAULT_PRODUCT_LIMIT)
}

pub fn strong_product_with_limit(a: &Graph, b: &Graph, limit: usize) -> Result<(Graph, ProductVertexIndex)> {
    let n = a
        .n()
        .checked_mul(b.n())
        .filter(|&n| n <= limit)
        .ok_or(Error::TooLarge {
            n: a.n().saturating_mul(b.n()),
            limit,
        })?;
    let idx = ProductVertexIndex::new(a.n(), b.n());
    let mut edges = Vec::with_capacity(
        a.n() * b.edge_count() + b.n() * a.edge_count() + 2 * a.edge_count() * b.edge_count(),
    );
    for v in 0..a.n() {
        edges.extend(b.edges().iter().map(|&(x, y)| (idx.index(v, x), idx.index(v, y))));
    }
    for &(v, w) in a.edges() {
        for x in 0..b.n() {
            edges.push((idx.index(v, x), idx.index(w, x)));
        }
        for &(x, y) in b.edges() {
            edges.push((idx.index(v, x), idx.index(w, y)));
            edges.push((idx.index(v, y), idx.index(w, x)));
        }
    }
    Ok((Graph::from_edges(n, edges)?, idx))
}

/// `g` plus `k` new vertices `n..n+k`, adjacent to everything and each other.
pub fn join_complete(g: &Graph, k: usize) -> Graph {
    let n = g.n();
    let mut edges = g.edges().to_vec();
    for j in n..n + k {
        edges.extend((0..j).map(|v| (v, j)));
    }
    Graph::from_edges(n + k, edges).expect("join of a simple graph is simple")
}

/// `(φ1(a), φ2(b))` encoded as `φ1(a) * p2 + φ2(b)`, palette `p1 * p2`.
///
/// Strongly nonrepetitive on `G ⊠ H` when `φ1` is strongly nonrepetitive on
/// `G` and every `φ2`-repetitive lazy walk in `H` is boring; neither
/// hypothesis is checked here.
pub fn compose_product_colouring(
    phi1: &Colouring,
    phi2: &Colouring,
    idx: &ProductVertexIndex,
) -> Result<Colouring> {
    for (got, want) in [(phi1.len(), idx.left), (phi2.len(), idx.right)] {
        if got != want {
            return Err(Error::SizeMismatch {
                expected: want,
                actual: got,
            });
        }
    }
    let p2 = phi2.palette();
    let palette = phi1
        .palette()
        .checked_mul(p2)
        .ok_or_else(|| Error::InvalidArgument("product palette overflows".into()))?;
    let colours = (0..idx.len())
        .map(|i| {
            let (a, b) = idx.pair(i);
            phi1.colour(a) * p2 + phi2.colour(b)
        })
        .collect();
    Colouring::new(colours, palette)
}

/// Colouring of `G ⊠ P_m` with the path factor coloured by [`path_colouring_4`].
pub fn compose_path_factor(phi1: &Colouring, m: usize, idx: &ProductVertexIndex) -> Result<Colouring> {
    let path = path_colouring_4(m);
    let phi2 = Colouring::new(path.colours().iter().map(|&c| c as usize).collect(), 4)?;
    compose_product_colouring(phi1, &phi2, idx)
}

/// Colouring of `G ⊠ K_ℓ` with each clique vertex its own colour.
pub fn compose_clique_factor(phi1: &Colouring, ell: usize, idx: &ProductVertexIndex) -> Result<Colouring> {
    if ell < 1 {
        return Err(Error::InvalidArgument("clique factor needs at least one vertex".into()));
    }
    let phi2 = Colouring::new((0..ell).collect(), ell)?;
    compose_product_colouring(phi1, &phi2, idx)
}

/// Colouring of `G + K_k`: join vertex `n + j` gets the fresh colour `p + j`.
pub fn compose_join(phi: &Colouring, k: usize) -> Colouring {
    let p = phi.palette();
    let mut colours = phi.colours().to_vec();
    colours.extend(p..p + k);
    Colouring::new(colours, p + k).expect("fresh colours lie in the widened palette")
}
