//! Tree-decompositions: representation, PACE `.td` ingestion, validation,
//! width and richness checks, chordal completion, a min-fill heuristic and an
//! exact branch-and-bound treewidth solver for small graphs.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::graph::{non_adjacent_pair, Graph, VertexMap};

/// Bags indexed by the nodes `0..bags.len()` of a tree given by `edges`.
///
/// Bags may be empty (restriction produces them); `vertex_count` is the
/// number of vertices of the host graph the bags refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    vertex_count: usize,
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Checks the tree shape and bag ranges; host-level axioms are checked by [`validate_td`].
    pub fn new(
        vertex_count: usize,
        bags: Vec<Vec<usize>>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let nodes = bags.len();
        if nodes == 0 {
            return Err(Error::InvalidDecomposition("no nodes".into()));
        }
        if edges.len() + 1 != nodes {
            return Err(Error::InvalidDecomposition(format!(
                "{nodes} nodes need {} tree edges, got {}",
                nodes - 1,
                edges.len()
            )));
        }
        let mut dsu = Dsu::new(nodes);
        for &(x, y) in &edges {
            if x >= nodes || y >= nodes {
                return Err(Error::InvalidDecomposition(format!(
                    "tree edge ({x}, {y}) refers to a missing node"
                )));
            }
            if !dsu.union(x, y) {
                return Err(Error::InvalidDecomposition(format!(
                    "tree edge ({x}, {y}) closes a cycle"
                )));
            }
        }
        let mut sorted = Vec::with_capacity(nodes);
        for mut bag in bags {
            bag.sort_unstable();
            bag.dedup();
            if let Some(&v) = bag.last().filter(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: vertex_count,
                });
            }
            sorted.push(bag);
        }
        Ok(TreeDecomposition {
            vertex_count,
            bags: sorted,
            edges,
        })
    }

    /// One bag holding every vertex.
    pub fn single_bag(vertex_count: usize) -> Self {
        TreeDecomposition {
            vertex_count,
            bags: vec![(0..vertex_count).collect()],
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// PACE `.td` text (1-based bag ids and vertices).
    pub fn to_pace(&self) -> String {
        let max_bag = self.bags.iter().map(Vec::len).max().unwrap_or(0);
        let mut s = format!("s td {} {} {}\n", self.bags.len(), max_bag, self.vertex_count);
        for (i, bag) in self.bags.iter().enumerate() {
            let _ = write!(s, "b {}", i + 1);
            for v in bag {
                let _ = write!(s, " {}", v + 1);
            }
            s.push('\n');
        }
        for &(x, y) in &self.edges {
            let _ = writeln!(s, "{} {}", x + 1, y + 1);
        }
        s
    }

    fn node_tree(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(x, y) in &self.edges {
            adj[x].push(y);
            adj[y].push(x);
        }
        adj
    }

    /// Nodes whose bag contains `v`, for every vertex.
    fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.vertex_count];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                occ[v].push(x);
            }
        }
        occ
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a] = b;
        true
    }
}

/// Parses a PACE 2017 tree-decomposition (`s td <bags> <max bag size> <n>`).
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(lineno, format!("bad number {s:?}")))
        };
        match fields[0] {
            "s" => {
                if header.is_some() {
                    return Err(parse_err(lineno, "repeated solution line"));
                }
                let [_, "td", b, w, n] = fields.as_slice() else {
                    return Err(parse_err(lineno, "expected \"s td <bags> <max bag size> <n>\""));
                };
                let h = (num(b)?, num(w)?, num(n)?);
                bags = vec![None; h.0];
                header = Some(h);
            }
            "b" => {
                let (nb, _, n) = header.ok_or_else(|| parse_err(lineno, "bag before header"))?;
                let id = num(fields.get(1).ok_or_else(|| parse_err(lineno, "missing bag id"))?)?;
                if id == 0 || id > nb {
                    return Err(parse_err(lineno, format!("bag id {id} outside 1..={nb}")));
                }
                let mut bag = Vec::with_capacity(fields.len() - 2);
                for f in &fields[2..] {
                    let v = num(f)?;
                    if v == 0 || v > n {
                        return Err(parse_err(lineno, format!("vertex {v} outside 1..={n}")));
                    }
                    bag.push(v - 1);
                }
                if bags[id - 1].replace(bag).is_some() {
                    return Err(parse_err(lineno, format!("duplicate bag id {id}")));
                }
            }
            _ => {
                let (nb, _, _) = header.ok_or_else(|| parse_err(lineno, "edge before header"))?;
                let [a, b] = fields.as_slice() else {
                    return Err(parse_err(lineno, "expected a tree edge \"<bag> <bag>\""));
                };
                let (a, b) = (num(a)?, num(b)?);
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(parse_err(lineno, format!("tree edge {a} {b} outside 1..={nb}")));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, declared_width, n) = header.ok_or_else(|| parse_err(1, "missing \"s td\" line"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::InvalidDecomposition(format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let td = TreeDecomposition::new(n, bags, edges)?;
    let actual = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    if actual != declared_width {
        return Err(Error::InvalidDecomposition(format!(
            "declared max bag size {declared_width}, actual {actual}"
        )));
    }
    Ok(td)
}

/// First violated tree-decomposition axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum TdViolation {
    VertexCountMismatch { graph: usize, decomposition: usize },
    VertexUncovered { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    SubtreeDisconnected { vertex: usize },
}

/// Checks vertex coverage, edge coverage and subtree connectivity, in that order.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Option<TdViolation> {
    if g.n() != td.vertex_count {
        return Some(TdViolation::VertexCountMismatch {
            graph: g.n(),
            decomposition: td.vertex_count,
        });
    }
    let occ = td.occurrences();
    if let Some(vertex) = occ.iter().position(Vec::is_empty) {
        return Some(TdViolation::VertexUncovered { vertex });
    }
    for &(u, v) in g.edges() {
        let covered = occ[u]
            .iter()
            .any(|&x| td.bags[x].binary_search(&v).is_ok());
        if !covered {
            return Some(TdViolation::EdgeUncovered { u, v });
        }
    }
    let tree = td.node_tree();
    let mut mark = vec![usize::MAX; td.bags.len()];
    for (vertex, nodes) in occ.iter().enumerate() {
        for &x in nodes {
            mark[x] = vertex;
        }
        let mut seen = 1;
        let mut stack = vec![nodes[0]];
        let mut visited = HashSet::from([nodes[0]]);
        while let Some(x) = stack.pop() {
            for &y in &tree[x] {
                if mark[y] == vertex && visited.insert(y) {
                    seen += 1;
                    stack.push(y);
                }
            }
        }
        if seen != nodes.len() {
            return Some(TdViolation::SubtreeDisconnected { vertex });
        }
    }
    None
}

/// Largest bag size minus one.
pub fn width(td: &TreeDecomposition) -> Result<usize> {
    td.bags
        .iter()
        .map(Vec::len)
        .max()
        .filter(|&m| m > 0)
        .map(|m| m - 1)
        .ok_or(Error::EmptyDecomposition)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum RichViolation {
    TooLarge { edge: (usize, usize), intersection: Vec<usize> },
    NotClique { edge: (usize, usize), pair: (usize, usize) },
}

/// Checks that every adjacent-bag intersection is a clique on at most `r` vertices.
pub fn is_r_rich(g: &Graph, td: &TreeDecomposition, r: usize) -> Option<RichViolation> {
    for &(x, y) in &td.edges {
        let inter: Vec<usize> = td.bags[x]
            .iter()
            .copied()
            .filter(|v| td.bags[y].binary_search(v).is_ok())
            .collect();
        if inter.len() > r {
            return Some(RichViolation::TooLarge {
                edge: (x, y),
                intersection: inter,
            });
        }
        if let Some(pair) = non_adjacent_pair(g, &inter) {
            return Some(RichViolation::NotClique { edge: (x, y), pair });
        }
    }
    None
}

/// `g` plus every pair of vertices sharing a bag.
pub fn chordal_completion(g: &Graph, td: &TreeDecomposition) -> Graph {
    let extra = td.bags.iter().flat_map(|bag| {
        bag.iter()
            .enumerate()
            .flat_map(move |(i, &u)| bag[i + 1..].iter().map(move |&v| (u, v)))
    });
    Graph::from_edges_lenient(g.n(), g.edges().iter().copied().chain(extra))
}

/// Restricts every bag to the domain of `map` and renumbers through it.
/// Nodes whose bags become empty are kept so the tree shape is unchanged.
pub fn restrict_td(td: &TreeDecomposition, map: &VertexMap) -> TreeDecomposition {
    let bags = td
        .bags
        .iter()
        .map(|bag| {
            let mut b: Vec<usize> = bag
                .iter()
                .filter_map(|&v| map.old_to_new.get(v).copied().flatten())
                .collect();
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();
    TreeDecomposition {
        vertex_count: map.new_to_old.len(),
        bags,
        edges: td.edges.clone(),
    }
}

/// Contracts every tree edge whose one bag is contained in the other. The
/// result covers the same vertices, edges and subtrees, and has at most one
/// node per vertex once no bag is a subset of a neighbour's.
pub fn simplify_td(td: &TreeDecomposition) -> TreeDecomposition {
    let nodes = td.bags.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nodes];
    for &(x, y) in &td.edges {
        adj[x].insert(y);
        adj[y].insert(x);
    }
    let mut alive = vec![true; nodes];
    let mut work: Vec<(usize, usize)> = td.edges.clone();
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|v| b.binary_search(v).is_ok());
    while let Some((x, y)) = work.pop() {
        if !alive[x] || !alive[y] || !adj[x].contains(&y) {
            continue;
        }
        let (gone, keep) = if subset(&td.bags[x], &td.bags[y]) {
            (x, y)
        } else if subset(&td.bags[y], &td.bags[x]) {
            (y, x)
        } else {
            continue;
        };
        alive[gone] = false;
        adj[keep].remove(&gone);
        for z in std::mem::take(&mut adj[gone]) {
            if z != keep {
                adj[z].remove(&gone);
                adj[z].insert(keep);
                adj[keep].insert(z);
                work.push((z, keep));
            }
        }
    }
    let mut id = vec![usize::MAX; nodes];
    let mut bags = Vec::new();
    for x in (0..nodes).filter(|&x| alive[x]) {
        id[x] = bags.len();
        bags.push(td.bags[x].clone());
    }
    let mut edges = Vec::with_capacity(bags.len().saturating_sub(1));
    for x in (0..nodes).filter(|&x| alive[x]) {
        edges.extend(adj[x].iter().filter(|&&y| x < y).map(|&y| (id[x], id[y])));
    }
    TreeDecomposition {
        vertex_count: td.vertex_count,
        bags,
        edges,
    }
}

/// Decomposition induced by eliminating vertices in `order`: node `i` holds
/// `order[i]` and its later neighbours in the filled graph.
pub fn td_from_elimination_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "elimination order must list every vertex");
    if n == 0 {
        return TreeDecomposition::single_bag(0);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbours(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        parent[i] = later.iter().map(|&w| pos[w]).min();
        let mut bag = later;
        bag.push(v);
        bags.push(bag);
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut last_root: Option<usize> = None;
    for (i, &up) in parent.iter().enumerate() {
        match up {
            Some(p) => edges.push((i, p)),
            None => {
                if let Some(r) = last_root {
                    edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    TreeDecomposition::new(n, bags, edges).expect("elimination tree is a tree")
}

/// Min-fill elimination ordering; ties broken by degree, then index.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbours(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| {
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                let mut fill = 0;
                for (i, &x) in nb.iter().enumerate() {
                    for &y in &nb[i + 1..] {
                        if !adj[x].contains(&y) {
                            fill += 1;
                        }
                    }
                }
                (fill, nb.len(), v)
            })
            .unwrap();
        let nb: Vec<usize> = adj[best].iter().copied().collect();
        for (i, &x) in nb.iter().enumerate() {
            adj[x].remove(&best);
            for &y in &nb[i + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[best].clear();
        alive[best] = false;
        order.push(best);
    }
    order
}

/// Tree-decomposition from the min-fill heuristic (an upper bound on treewidth).
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    td_from_elimination_order(g, &min_fill_order(g))
}

/// Chordality test via maximum cardinality search and a perfect-elimination check.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    // visit order; reversed it is a perfect elimination ordering iff g is chordal
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        numbered[v] = true;
        visit.push(v);
        for &w in g.neighbours(v) {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in visit.iter().enumerate() {
        pos[v] = i;
    }
    // earlier-visited neighbours of each vertex must form a clique; it suffices
    // that they are adjacent to the latest of them
    for &v in &visit {
        let earlier: Vec<usize> = g
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] < pos[v])
            .collect();
        if let Some(&p) = earlier.iter().max_by_key(|&&w| pos[w]) {
            if earlier.iter().any(|&w| w != p && !g.has_edge(w, p)) {
                return false;
            }
        }
    }
    true
}

pub const DEFAULT_TREEWIDTH_BUDGET: usize = 30;
const MASK_LIMIT: usize = 64;

/// Exact treewidth by branch and bound over elimination orderings.
///
/// Errors when `g` has more than `budget` vertices (or more than 64).
pub fn exact_treewidth(g: &Graph, budget: usize) -> Result<usize> {
    let n = g.n();
    let limit = budget.min(MASK_LIMIT);
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let upper = width(&heuristic_td(g)).expect("nonempty graph");
    let lower = minor_min_width(g).max(max_clique(&adj).saturating_sub(1));
    for t in lower..upper {
        let mut search = EliminationSearch {
            adj: &adj,
            all: full_mask(n),
            bound: t,
            failed: HashSet::new(),
        };
        if search.feasible(0) {
            return Ok(t);
        }
    }
    Ok(upper)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Lower bound: repeatedly contract a minimum-degree vertex into its
/// minimum-degree neighbour, tracking the largest minimum degree seen.
fn minor_min_width(g: &Graph) -> usize {
    let mut adj: Vec<BTreeSet<usize>> = (0..g.n())
        .map(|v| g.neighbours(v).iter().copied().collect())
        .collect();
    let mut alive: BTreeSet<usize> = (0..g.n()).collect();
    let mut best = 0;
    while alive.len() > 1 {
        let v = *alive.iter().min_by_key(|&&v| (adj[v].len(), v)).unwrap();
        best = best.max(adj[v].len());
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        alive.remove(&v);
        match nb.iter().copied().min_by_key(|&u| (adj[u].len(), u)) {
            None => {}
            Some(u) => {
                for &w in &nb {
                    adj[w].remove(&v);
                    if w != u {
                        adj[w].insert(u);
                        adj[u].insert(w);
                    }
                }
            }
        }
        adj[v].clear();
    }
    best
}

fn max_clique(adj: &[u64]) -> usize {
    fn expand(adj: &[u64], size: usize, mut cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            expand(adj, size + 1, cand & adj[v], best);
        }
    }
    let mut best = 0;
    expand(adj, 0, full_mask(adj.len()), &mut best);
    best
}

struct EliminationSearch<'a> {
    adj: &'a [u64],
    all: u64,
    bound: usize,
    failed: HashSet<u64>,
}

impl EliminationSearch<'_> {
    /// Neighbourhood of `v` after eliminating `gone`: vertices outside `gone`
    /// reachable from `v` through `gone`.
    fn neighbourhood(&self, v: usize, gone: u64) -> u64 {
        let mut reach = self.adj[v];
        let mut frontier = reach & gone;
        let mut seen = frontier;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.adj[u];
            }
            reach |= next;
            frontier = next & gone & !seen;
            seen |= frontier;
        }
        reach & !gone & !(1 << v)
    }

    fn is_clique(nbr: &[u64], set: u64) -> bool {
        bits(set).all(|u| nbr[u] & set == set & !(1 << u))
    }

    fn feasible(&mut self, gone: u64) -> bool {
        let rest = self.all & !gone;
        if rest.count_ones() as usize <= self.bound + 1 {
            return true;
        }
        if self.failed.contains(&gone) {
            return false;
        }
        let mut nbr = vec![0u64; self.adj.len()];
        for v in bits(rest) {
            nbr[v] = self.neighbourhood(v, gone);
        }
        let low: Vec<usize> = bits(rest)
            .filter(|&v| nbr[v].count_ones() as usize <= self.bound)
            .collect();
        // (almost) simplicial vertices of small degree can always go first
        for &v in &low {
            let set = nbr[v];
            let safe = Self::is_clique(&nbr, set)
                || bits(set).any(|w| Self::is_clique(&nbr, set & !(1 << w)));
            if safe {
                let ok = self.feasible(gone | 1 << v);
                if !ok {
                    self.failed.insert(gone);
                }
                return ok;
            }
        }
        for &v in &low {
            if self.feasible(gone | 1 << v) {
                return true;
            }
        }
        self.failed.insert(gone);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{induced_subgraph, VertexSet};

    fn p3_td() -> TreeDecomposition {
        parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap()
    }

    #[test]
    fn parse_examples() {
        let td = parse_td("s td 1 2 2\nb 1 1 2").unwrap();
        assert_eq!(td.bags(), &[vec![0, 1]]);
        assert_eq!(validate_td(&Graph::path(3), &p3_td()), None);
        let cyclic = "s td 3 1 3\nb 1 1\nb 2 2\nb 3 3\n1 2\n2 3\n3 1\n";
        assert!(parse_td(cyclic).is_err());
        let disconnected = "s td 3 1 3\nb 1 1\nb 2 2\nb 3 3\n1 2\n";
        assert!(parse_td(disconnected).is_err());
    }

    #[test]
    fn parse_errors() {
        let bad = [
            "b 1 1",
            "s td 1 1 1\nb 1 1\nb 1 1",
            "s td 1 1 1\nb 2 1",
            "s td 1 1 1\nb 1 2",
            "s td 1 2 2\nb 1 1",
            "s tw 1 1 1\nb 1 1",
            "s td 2 1 2\nb 1 1",
            "s td 1 1 1\nb 1 x",
        ];
        for text in bad {
            assert!(parse_td(text).is_err(), "{text:?} should fail");
        }
        assert!(parse_td("c hello\ns td 1 0 0\nb 1\n").is_ok());
    }

    #[test]
    fn pace_round_trip() {
        let td = heuristic_td(&Graph::cycle(6));
        assert_eq!(parse_td(&td.to_pace()).unwrap(), td);
    }

    #[test]
    fn validate_examples() {
        assert_eq!(
            validate_td(&Graph::complete(3), &p3_td()),
            Some(TdViolation::EdgeUncovered { u: 0, v: 2 })
        );
        let split = TreeDecomposition::new(2, vec![vec![0], vec![1], vec![0]], vec![(0, 1), (1, 2)])
            .unwrap();
        assert_eq!(
            validate_td(&Graph::edgeless(2), &split),
            Some(TdViolation::SubtreeDisconnected { vertex: 0 })
        );
        let missing = TreeDecomposition::new(3, vec![vec![0, 1]], vec![]).unwrap();
        assert_eq!(
            validate_td(&Graph::edgeless(3), &missing),
            Some(TdViolation::VertexUncovered { vertex: 2 })
        );
        assert!(matches!(
            validate_td(&Graph::edgeless(2), &missing),
            Some(TdViolation::VertexCountMismatch { .. })
        ));
    }

    #[test]
    fn width_examples() {
        assert_eq!(width(&TreeDecomposition::single_bag(1)).unwrap(), 0);
        let td = TreeDecomposition::new(
            4,
            vec![vec![0, 1], vec![0, 1, 2], vec![2, 3]],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(width(&td).unwrap(), 2);
        let empty = TreeDecomposition::new(0, vec![vec![]], vec![]).unwrap();
        assert_eq!(width(&empty), Err(Error::EmptyDecomposition));
    }

    #[test]
    fn richness_examples() {
        assert_eq!(is_r_rich(&Graph::path(3), &p3_td(), 1), None);
        let td = TreeDecomposition::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]], vec![(0, 1)]).unwrap();
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            is_r_rich(&g, &td, 2),
            Some(RichViolation::NotClique {
                edge: (0, 1),
                pair: (1, 2)
            })
        );
        let td = TreeDecomposition::new(5, vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]], vec![(0, 1)])
            .unwrap();
        assert!(matches!(
            is_r_rich(&Graph::complete(5), &td, 2),
            Some(RichViolation::TooLarge { .. })
        ));
        assert_eq!(is_r_rich(&Graph::complete(5), &td, 3), None);
    }

    #[test]
    fn completion_examples() {
        assert_eq!(chordal_completion(&Graph::path(3), &p3_td()), Graph::path(3));
        let single = TreeDecomposition::single_bag(3);
        assert_eq!(chordal_completion(&Graph::path(3), &single), Graph::complete(3));
        assert_eq!(chordal_completion(&Graph::edgeless(3), &single), Graph::complete(3));
    }

    #[test]
    fn heuristic_examples() {
        let tree = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let td = heuristic_td(&tree);
        assert_eq!(validate_td(&tree, &td), None);
        assert_eq!(width(&td).unwrap(), 1);
        assert_eq!(width(&heuristic_td(&Graph::complete(5))).unwrap(), 4);
        assert_eq!(width(&heuristic_td(&Graph::cycle(4))).unwrap(), 2);
        let e = heuristic_td(&Graph::edgeless(3));
        assert_eq!(e.bags(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(validate_td(&Graph::edgeless(3), &e), None);
        assert_eq!(heuristic_td(&Graph::edgeless(0)).node_count(), 1);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_treewidth(&Graph::path(5), 30).unwrap(), 1);
        assert_eq!(exact_treewidth(&Graph::cycle(5), 30).unwrap(), 2);
        assert_eq!(exact_treewidth(&Graph::complete(4), 30).unwrap(), 3);
        assert_eq!(exact_treewidth(&Graph::edgeless(3), 30).unwrap(), 0);
        assert!(matches!(
            exact_treewidth(&Graph::path(31), 30),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn exact_on_grids() {
        // k x k grid has treewidth k
        for k in 2..=5 {
            let idx = |r: usize, c: usize| r * k + c;
            let mut edges = Vec::new();
            for r in 0..k {
                for c in 0..k {
                    if r + 1 < k {
                        edges.push((idx(r, c), idx(r + 1, c)));
                    }
                    if c + 1 < k {
                        edges.push((idx(r, c), idx(r, c + 1)));
                    }
                }
            }
            let g = Graph::from_edges(k * k, edges).unwrap();
            assert_eq!(exact_treewidth(&g, 30).unwrap(), k, "grid {k}x{k}");
        }
    }

    #[test]
    fn restrict_examples() {
        let (sub, map) = induced_subgraph(&Graph::path(3), &[0, 1].into()).unwrap();
        let r = restrict_td(&p3_td(), &map);
        assert_eq!(r.bags(), &[vec![0, 1], vec![1]]);
        assert_eq!(validate_td(&sub, &r), None);

        let (_, map) = induced_subgraph(&Graph::path(3), &VertexSet::default()).unwrap();
        let r = restrict_td(&p3_td(), &map);
        assert_eq!(r.node_count(), 2);
        assert!(width(&r).is_err());

        let (_, map) = induced_subgraph(&Graph::complete(4), &[0, 2].into()).unwrap();
        let r = restrict_td(&TreeDecomposition::single_bag(4), &map);
        assert_eq!(r.bags(), &[vec![0, 1]]);
    }

    #[test]
    fn chordality() {
        assert!(is_chordal(&Graph::complete(5)));
        assert!(is_chordal(&Graph::path(6)));
        assert!(!is_chordal(&Graph::cycle(4)));
        assert!(!is_chordal(&Graph::cycle(7)));
        let c4_chord = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(is_chordal(&c4_chord));
    }
}
