//! Simple undirected graphs on dense vertex indices, plus the handful of
//! structural queries the colouring constructions need.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

/// Sorted set of distinct vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    fn check(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        VertexSet::new(v)
    }
}

/// Correspondence between the vertices of a host graph and a derived graph.
///
/// `old_to_new[v]` is `None` when `v` has no image (removed vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            old_to_new: (0..n).map(Some).collect(),
            new_to_old: (0..n).collect(),
        }
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// JSON form: `{"n": 3, "edges": [[0, 1], [1, 2]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        Graph::from_edges(j.n, j.edges)
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `n <count>` header followed by one `u v` pair per line, 0-based.
    EdgeList,
    /// Standard graph6 ASCII encoding.
    Graph6,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Self::from_sorted_unique(n, seen.into_iter().collect()))
    }

    /// Builds a graph, silently dropping loops and collapsing duplicates.
    /// Panics on out-of-range endpoints.
    pub(crate) fn from_edges_lenient(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| {
                assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
                (u.min(v), u.max(v))
            })
            .collect();
        Self::from_sorted_unique(n, set.into_iter().collect())
    }

    fn from_sorted_unique(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn edgeless(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::from_sorted_unique(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges_lenient(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        Self::from_sorted_unique(
            n,
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Adjacent or equal.
    pub fn is_step(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (n, fields.as_slice()) {
            (None, ["n", count]) => {
                n = Some(
                    count
                        .parse::<usize>()
                        .map_err(|_| parse_err(lineno, format!("bad vertex count {count:?}")))?,
                );
            }
            (None, _) => return Err(parse_err(lineno, "expected header \"n <count>\"")),
            (Some(_), ["n", _]) => return Err(parse_err(lineno, "repeated header")),
            (Some(count), [a, b]) => {
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| parse_err(lineno, format!("bad vertex index {s:?}")))
                };
                let (u, v) = (parse(a)?, parse(b)?);
                for x in [u, v] {
                    if x >= count {
                        return Err(parse_err(
                            lineno,
                            format!("vertex {x} out of range for n = {count}"),
                        ));
                    }
                }
                if u == v {
                    return Err(parse_err(lineno, format!("loop at vertex {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(lineno, format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
            (Some(_), _) => return Err(parse_err(lineno, "expected \"u v\"")),
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing header \"n <count>\""))?;
    Graph::from_edges(n, edges)
}

fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| parse_err(1, "empty graph6 input"))?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("invalid graph6 byte {b:#x}")));
    }
    let value = |bs: &[u8]| bs.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    let (n, body) = match bytes {
        [] => return Err(parse_err(1, "empty graph6 input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (value(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 && rest[0] != 126 => (value(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(parse_err(1, "truncated graph6 size field")),
        [b, rest @ ..] => ((*b - 63) as usize, rest),
    };
    let needed_bits = n * n.saturating_sub(1) / 2;
    let needed_bytes = needed_bits.div_ceil(6);
    if body.len() != needed_bytes {
        return Err(parse_err(
            1,
            format!(
                "graph6 body has {} bytes, expected {needed_bytes} for n = {n}",
                body.len()
            ),
        ));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

fn check_set(g: &Graph, s: &VertexSet) -> Result<()> {
    s.check(g.n())
}

/// `G[S]` with vertices renumbered in increasing order of their host index.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, VertexMap)> {
    check_set(g, s)?;
    let mut old_to_new = vec![None; g.n()];
    for (i, v) in s.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter_map(|&(u, v)| Some((old_to_new[u]?, old_to_new[v]?)))
        .collect();
    let sub = Graph::from_edges_lenient(s.len(), edges);
    Ok((
        sub,
        VertexMap {
            old_to_new,
            new_to_old: s.as_slice().to_vec(),
        },
    ))
}

pub fn is_clique(g: &Graph, s: &VertexSet) -> Result<bool> {
    check_set(g, s)?;
    let vs = s.as_slice();
    Ok(vs
        .iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v))))
}

/// First pair of `s` that is not adjacent, if any.
pub(crate) fn non_adjacent_pair(g: &Graph, s: &[usize]) -> Option<(usize, usize)> {
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if !g.has_edge(u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

/// Components restricted to the vertices where `keep` is true.
pub(crate) fn components_within(g: &Graph, keep: &[bool]) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if !keep[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u) {
                if keep[w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Components, each sorted, listed by minimum element.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    components_within(g, &vec![true; g.n()])
        .into_iter()
        .map(VertexSet)
        .collect()
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || components_within(g, &vec![true; g.n()]).len() == 1
}

/// Contracts the connected set `s` to a single vertex.
///
/// Vertices outside `s` keep their relative order; the contracted vertex is
/// placed at the position of `min(s)`.
pub fn contract_set(g: &Graph, s: &VertexSet) -> Result<(Graph, VertexMap)> {
    check_set(g, s)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut inside = vec![false; g.n()];
    for v in s.iter() {
        inside[v] = true;
    }
    if components_within(g, &inside).len() != 1 {
        return Err(Error::SetNotConnected);
    }
    let rep = s.as_slice()[0];
    let mut old_to_new = vec![None; g.n()];
    let mut new_to_old = Vec::with_capacity(g.n() - s.len() + 1);
    for v in 0..g.n() {
        if !inside[v] || v == rep {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
    }
    let merged = old_to_new[rep];
    for v in s.iter() {
        old_to_new[v] = merged;
    }
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (old_to_new[u].unwrap(), old_to_new[v].unwrap()));
    let h = Graph::from_edges_lenient(new_to_old.len(), edges);
    Ok((
        h,
        VertexMap {
            old_to_new,
            new_to_old,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Graph {
        parse_graph(s, GraphFormat::EdgeList).unwrap()
    }

    #[test]
    fn edge_list_basics() {
        let g = el("n 2\n0 1");
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        let g = el("n 3");
        assert_eq!((g.n(), g.edge_count()), (3, 0));
        let g = el("# comment\nn 4\n\n3 0\n1 2\n");
        assert_eq!(g.edges(), &[(0, 3), (1, 2)]);
    }

    #[test]
    fn edge_list_errors() {
        let bad = [
            "0 1",
            "n 2\n0 2",
            "n 2\n0 1\n1 0",
            "n 2\n1 1",
            "n 2\n0 1 2",
            "n x",
            "",
            "n 2\nn 3",
        ];
        for text in bad {
            assert!(
                matches!(parse_graph(text, GraphFormat::EdgeList), Err(Error::Parse { .. })),
                "{text:?} should be rejected"
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(4);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    #[test]
    fn graph6_known_strings() {
        let k4 = parse_graph("C~", GraphFormat::Graph6).unwrap();
        assert_eq!(k4, Graph::complete(4));
        let p3 = parse_graph(">>graph6<<Bg\n", GraphFormat::Graph6).unwrap();
        assert_eq!(p3, Graph::path(3));
        assert_eq!(parse_graph("?", GraphFormat::Graph6).unwrap().n(), 0);
        assert!(parse_graph("C~~", GraphFormat::Graph6).is_err());
        assert!(parse_graph("C ", GraphFormat::Graph6).is_err());
    }

    #[test]
    fn induced_examples() {
        let (h, _) = induced_subgraph(&Graph::complete(3), &[0, 1].into()).unwrap();
        assert_eq!(h, Graph::complete(2));
        let (h, m) = induced_subgraph(&Graph::path(4), &[0, 2].into()).unwrap();
        assert_eq!(h, Graph::edgeless(2));
        assert_eq!(m.new_to_old, vec![0, 2]);
        assert_eq!(m.old_to_new, vec![Some(0), None, Some(1), None]);
        let c5 = Graph::cycle(5);
        let (h, m) = induced_subgraph(&c5, &VertexSet::new(0..5)).unwrap();
        assert_eq!(h, c5);
        assert_eq!(m, VertexMap::identity(5));
        assert!(induced_subgraph(&c5, &[7].into()).is_err());
    }

    #[test]
    fn clique_examples() {
        assert!(is_clique(&Graph::complete(4), &[0, 2, 3].into()).unwrap());
        assert!(!is_clique(&Graph::path(3), &[0, 1, 2].into()).unwrap());
        assert!(is_clique(&Graph::path(3), &VertexSet::default()).unwrap());
        assert!(is_clique(&Graph::edgeless(3), &[1].into()).unwrap());
        assert!(is_clique(&Graph::edgeless(3), &[3].into()).is_err());
    }

    #[test]
    fn component_examples() {
        let sets = |g: &Graph| -> Vec<Vec<usize>> {
            connected_components(g)
                .into_iter()
                .map(VertexSet::into_vec)
                .collect()
        };
        assert_eq!(sets(&Graph::edgeless(3)), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(sets(&Graph::path(3)), vec![vec![0, 1, 2]]);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(sets(&two), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn contraction_examples() {
        let (h, _) = contract_set(&Graph::path(3), &[0, 1].into()).unwrap();
        assert_eq!(h, Graph::complete(2));
        let (h, _) = contract_set(&Graph::cycle(4), &[1, 2].into()).unwrap();
        assert_eq!(h, Graph::complete(3));
        let (h, m) = contract_set(&Graph::complete(4), &[0, 1, 2].into()).unwrap();
        assert_eq!(h, Graph::complete(2));
        assert_eq!(m.old_to_new, vec![Some(0), Some(0), Some(0), Some(1)]);
        assert_eq!(
            contract_set(&Graph::path(3), &VertexSet::default()),
            Err(Error::EmptySet)
        );
        assert_eq!(
            contract_set(&Graph::path(3), &[0, 2].into()),
            Err(Error::SetNotConnected)
        );
    }
}
