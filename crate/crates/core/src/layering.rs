//! Layerings, BFS layerings and shadows.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components_within, is_connected, non_adjacent_pair, Graph, VertexSet};

/// Ordered partition `(V_0, V_1, ...)` of `0..n` with no empty trailing layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Layering {
    layers: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl Layering {
    /// Builds a layering from explicit layers; they must partition `0..n` for
    /// some `n`, and the last layer must be nonempty.
    pub fn from_layers(layers: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = layers.iter().map(Vec::len).sum();
        if layers.last().is_some_and(Vec::is_empty) {
            return Err(Error::InvalidLayering("empty trailing layer".into()));
        }
        let mut depth = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(layers.len());
        for (i, layer) in layers.into_iter().enumerate() {
            for &v in &layer {
                if v >= n {
                    return Err(Error::InvalidLayering(format!(
                        "vertex {v} out of range for {n} vertices"
                    )));
                }
                if depth[v] != usize::MAX {
                    return Err(Error::InvalidLayering(format!("vertex {v} appears twice")));
                }
                depth[v] = i;
            }
            let mut layer = layer;
            layer.sort_unstable();
            sorted.push(layer);
        }
        Ok(Layering {
            layers: sorted,
            depth,
        })
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &[usize] {
        &self.layers[i]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn depths(&self) -> &[usize] {
        &self.depth
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.depth.len()
    }
}

impl TryFrom<Vec<Vec<usize>>> for Layering {
    type Error = Error;
    fn try_from(layers: Vec<Vec<usize>>) -> Result<Self> {
        Layering::from_layers(layers)
    }
}

impl From<Layering> for Vec<Vec<usize>> {
    fn from(l: Layering) -> Self {
        l.layers
    }
}

/// Distances from `root` in a connected graph, as a layering.
pub fn bfs_layering(g: &Graph, root: usize) -> Result<Layering> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: root,
            n: g.n(),
        });
    }
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let dist = bfs_distances(g, root);
    let mut layers = vec![Vec::new(); dist.iter().max().map_or(0, |d| d + 1)];
    for (v, &d) in dist.iter().enumerate() {
        layers[d].push(v);
    }
    Ok(Layering { layers, depth: dist })
}

pub(crate) fn bfs_distances(g: &Graph, root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbours(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// First edge (in sorted edge order) whose endpoints are more than one layer
/// apart. Errors if the layering does not cover the graph's vertex set.
pub fn validate_layering(g: &Graph, l: &Layering) -> Result<Option<(usize, usize)>> {
    if l.vertex_count() != g.n() {
        return Err(Error::InvalidLayering(format!(
            "layering covers {} vertices, graph has {}",
            l.vertex_count(),
            g.n()
        )));
    }
    Ok(g
        .edges()
        .iter()
        .copied()
        .find(|&(u, v)| l.depth(u).abs_diff(l.depth(v)) > 1))
}

/// A connected component of `G[V_i ∪ V_{i+1} ∪ ...]` and its shadow in `V_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shadow {
    pub level: usize,
    pub component: VertexSet,
    pub shadow: VertexSet,
}

/// Every shadow of the layering, ordered by level then by the component's
/// least vertex.
pub fn shadows(g: &Graph, l: &Layering) -> Vec<Shadow> {
    let mut out = Vec::new();
    for level in 1..l.len() {
        let keep: Vec<bool> = (0..g.n()).map(|v| l.depth(v) >= level).collect();
        for comp in components_within(g, &keep) {
            let shadow = VertexSet::new(
                comp.iter()
                    .flat_map(|&v| g.neighbours(v))
                    .copied()
                    .filter(|&w| l.depth(w) == level - 1),
            );
            out.push(Shadow {
                level,
                component: VertexSet::new(comp),
                shadow,
            });
        }
    }
    out
}

/// A shadow that is not a clique, with a non-adjacent pair from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowViolation {
    pub shadow: Shadow,
    pub pair: (usize, usize),
}

pub fn is_shadow_complete(g: &Graph, l: &Layering) -> Option<ShadowViolation> {
    shadows(g, l).into_iter().find_map(|s| {
        non_adjacent_pair(g, s.shadow.as_slice()).map(|pair| ShadowViolation { shadow: s, pair })
    })
}
