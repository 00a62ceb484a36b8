//! Bounded-exhaustive certification of colourings: properness, repetitive
//! paths, bad lazy walks, and a brute-force nonrepetitive chromatic number for
//! tiny graphs.
//!
//! Both searches split a candidate into halves. The first half is enumerated
//! freely; the second half is forced colour by colour, so only neighbours
//! carrying the required colour are ever explored.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::twcolour::Colouring;

pub const DEFAULT_MAX_ORDER: usize = 12;
pub const DEFAULT_MAX_WALK: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Proper,
    RepetitivePath,
    BadLazyWalk,
}

/// Outcome of one check. `counterexample` is present iff `pass` is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub pass: bool,
    pub counterexample: Option<Vec<usize>>,
    /// Maximum path order or walk length searched; `None` for properness.
    pub cap: Option<usize>,
    /// True iff the cap covered every possible length for this graph.
    pub complete: bool,
}

impl Verdict {
    fn new(kind: VerdictKind, cap: Option<usize>, complete: bool, found: Option<Vec<usize>>) -> Self {
        Verdict {
            kind,
            pass: found.is_none(),
            counterexample: found,
            cap,
            complete,
        }
    }
}

fn check_size(g: &Graph, c: &Colouring) -> Result<()> {
    if c.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            actual: c.len(),
        });
    }
    Ok(())
}

fn check_cap(cap: usize, what: &str) -> Result<()> {
    if cap < 2 || !cap.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "{what} cap must be even and >= 2, got {cap}"
        )));
    }
    Ok(())
}

pub fn is_proper(g: &Graph, c: &Colouring) -> Result<Verdict> {
    check_size(g, c)?;
    let bad = g
        .edges()
        .iter()
        .find(|&&(u, v)| c.colour(u) == c.colour(v))
        .map(|&(u, v)| vec![u, v]);
    Ok(Verdict::new(VerdictKind::Proper, None, true, bad))
}

/// Whether `seq` is a path of even order in `g` whose halves carry equal colours.
pub fn is_repetitive_path(g: &Graph, colours: &[usize], seq: &[usize]) -> bool {
    let t = seq.len() / 2;
    let mut seen = std::collections::HashSet::new();
    !seq.is_empty()
        && seq.len().is_multiple_of(2)
        && seq.iter().all(|&v| v < g.n() && seen.insert(v))
        && seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && (0..t).all(|i| colours[seq[i]] == colours[seq[i + t]])
}

/// Whether `seq` is a lazy walk of even length, repetitive under `colours`,
/// with `seq[i] != seq[i + k]` for every `i`.
pub fn is_bad_lazy_walk(g: &Graph, colours: &[usize], seq: &[usize]) -> bool {
    let k = seq.len() / 2;
    !seq.is_empty()
        && seq.len().is_multiple_of(2)
        && seq.iter().all(|&v| v < g.n())
        && seq.windows(2).all(|w| g.is_step(w[0], w[1]))
        && (0..k).all(|i| colours[seq[i]] == colours[seq[i + k]] && seq[i] != seq[i + k])
}

/// Searches simple paths of every even order up to `max_order` for one whose
/// two halves are coloured alike.
///
/// Candidates are grown from both halves at once: the pair `(v_i, v_{t+i})`
/// advances one step in each half with equal colours, and a hit is reported
/// once `v_t` is adjacent to `v_{t+1}`. The first hit in the order (start
/// vertex, start of the second half, depth first) is returned.
pub fn find_repetitive_path(g: &Graph, c: &Colouring, max_order: usize) -> Result<Verdict> {
    check_size(g, c)?;
    check_cap(max_order, "path order")?;
    let colours = c.colours();
    let closing = ClosingTable::build(g, colours, max_order / 2);
    let found = (0..g.n()).into_par_iter().find_map_first(|s| {
        let mut search = PathSearch::new(g, colours, max_order / 2, None);
        search.closing = closing.as_ref();
        search.search_from(s)
    });
    debug_assert!(found.as_ref().is_none_or(|p| is_repetitive_path(g, colours, p)));
    let complete = max_order >= 2 * (g.n() / 2);
    Ok(Verdict::new(VerdictKind::RepetitivePath, Some(max_order), complete, found))
}

/// Lower bounds for the path search, from the relaxation that drops
/// simplicity. Nodes are ordered pairs of distinct, equally coloured vertices;
/// `(a, b)` joins `(x, y)` when `x ~ a` and `y ~ b`. `steps[s][pair]` is the
/// least number of moves from `pair` to one whose first vertex is adjacent to
/// `s`, or `u8::MAX` beyond the search horizon.
struct ClosingTable {
    class: Vec<usize>,
    pos: Vec<usize>,
    offset: Vec<usize>,
    size: Vec<usize>,
    members: Vec<Vec<usize>>,
    steps: Vec<Vec<u8>>,
}

/// Above this many `(start, pair)` entries the search runs unpruned.
const CLOSING_TABLE_LIMIT: usize = 1 << 26;

impl ClosingTable {
    fn build(g: &Graph, colours: &[usize], max_half: usize) -> Option<Self> {
        if max_half < 2 {
            return None;
        }
        let mut index = std::collections::HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut class = vec![0; g.n()];
        let mut pos = vec![0; g.n()];
        for (v, &c) in colours.iter().enumerate() {
            let k = *index.entry(c).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            class[v] = k;
            pos[v] = members[k].len();
            members[k].push(v);
        }
        let size: Vec<usize> = members.iter().map(Vec::len).collect();
        let mut offset = Vec::with_capacity(size.len());
        let mut total = 0usize;
        for &s in &size {
            offset.push(total);
            total += s * s;
        }
        if total.checked_mul(g.n()).is_none_or(|t| t > CLOSING_TABLE_LIMIT) {
            return None;
        }
        let mut table = ClosingTable {
            class,
            pos,
            offset,
            size,
            members,
            steps: Vec::new(),
        };
        let horizon = (max_half - 1).min(u8::MAX as usize - 1) as u8;
        table.steps = (0..g.n())
            .into_par_iter()
            .map(|s| table.distances(g, s, total, horizon))
            .collect();
        Some(table)
    }

    fn id(&self, a: usize, b: usize) -> usize {
        let k = self.class[a];
        self.offset[k] + self.pos[a] * self.size[k] + self.pos[b]
    }

    fn distances(&self, g: &Graph, s: usize, total: usize, horizon: u8) -> Vec<u8> {
        let mut dist = vec![u8::MAX; total];
        let mut frontier = Vec::new();
        for &x in g.neighbours(s) {
            for &y in &self.members[self.class[x]] {
                if y != x {
                    dist[self.id(x, y)] = 0;
                    frontier.push((x, y));
                }
            }
        }
        // the move relation is symmetric, so distances to the targets are
        // distances from them
        for d in 1..=horizon {
            let mut next = Vec::new();
            for &(a, b) in &frontier {
                for &x in g.neighbours(a) {
                    for &y in g.neighbours(b) {
                        if y != x && self.class[y] == self.class[x] {
                            let i = self.id(x, y);
                            if dist[i] == u8::MAX {
                                dist[i] = d;
                                next.push((x, y));
                            }
                        }
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Whether `(a, b)` can close against `s` within `budget` more moves.
    fn viable(&self, s: usize, a: usize, b: usize, budget: usize) -> bool {
        let d = self.steps[s][self.id(a, b)];
        d != u8::MAX && d as usize <= budget
    }
}

struct PathSearch<'a> {
    g: &'a Graph,
    closing: Option<&'a ClosingTable>,
    colours: &'a [usize],
    max_half: usize,
    /// Vertices the search may use; `None` means all.
    allowed: Option<&'a [bool]>,
    on_path: Vec<bool>,
    first: Vec<usize>,
    second: Vec<usize>,
}

impl<'a> PathSearch<'a> {
    fn new(g: &'a Graph, colours: &'a [usize], max_half: usize, allowed: Option<&'a [bool]>) -> Self {
        PathSearch {
            g,
            closing: None,
            colours,
            max_half,
            allowed,
            on_path: vec![false; g.n()],
            first: Vec::with_capacity(max_half),
            second: Vec::with_capacity(max_half),
        }
    }

    fn usable(&self, v: usize) -> bool {
        !self.on_path[v] && self.allowed.is_none_or(|a| a[v])
    }

    fn search_from(&mut self, a: usize) -> Option<Vec<usize>> {
        if !self.usable(a) {
            return None;
        }
        for b in 0..self.g.n() {
            if b != a && self.colours[b] == self.colours[a] && self.usable(b) && self.viable(b, a, b, 1) {
                self.push(a, b);
                let hit = self.extend();
                self.pop();
                if hit.is_some() {
                    return hit;
                }
            }
        }
        None
    }

    /// Pruning test for pushing `(a, b)` as pair number `depth` (from 1).
    fn viable(&self, s: usize, a: usize, b: usize, depth: usize) -> bool {
        self.closing.is_none_or(|c| c.viable(s, a, b, self.max_half - depth))
    }

    fn push(&mut self, a: usize, b: usize) {
        self.on_path[a] = true;
        self.on_path[b] = true;
        self.first.push(a);
        self.second.push(b);
    }

    fn pop(&mut self) {
        let a = self.first.pop().unwrap();
        let b = self.second.pop().unwrap();
        self.on_path[a] = false;
        self.on_path[b] = false;
    }

    fn extend(&mut self) -> Option<Vec<usize>> {
        let t = self.first.len();
        let (a, b) = (self.first[t - 1], self.second[t - 1]);
        if self.g.has_edge(a, self.second[0]) {
            return Some([&self.first[..], &self.second[..]].concat());
        }
        if t == self.max_half {
            return None;
        }
        for &x in self.g.neighbours(a) {
            if !self.usable(x) {
                continue;
            }
            for &y in self.g.neighbours(b) {
                if y != x && self.colours[y] == self.colours[x] && self.usable(y) && self.viable(self.second[0], x, y, t + 1) {
                    self.push(x, y);
                    let hit = self.extend();
                    self.pop();
                    if hit.is_some() {
                        return hit;
                    }
                }
            }
        }
        None
    }
}

/// Searches lazy walks of every even length up to `max_len` for one that is
/// repetitive yet has `v_i != v_{i+k}` at every offset.
///
/// As for paths, the halves advance together as pairs `(v_i, v_{k+i})` of
/// distinct, equally coloured vertices. Walks need not be simple, so whether
/// a pair can still be completed depends only on the pair and the remaining
/// length, and a breadth-first search over pairs (shortest walks first) is
/// exact. The first start pair in lexicographic order with a hit wins.
pub fn find_bad_lazy_walk(g: &Graph, c: &Colouring, max_len: usize) -> Result<Verdict> {
    check_size(g, c)?;
    check_cap(max_len, "walk length")?;
    let colours = c.colours();
    let found = (0..g.n()).into_par_iter().find_map_first(|a| {
        (0..g.n())
            .filter(|&b| b != a && colours[b] == colours[a])
            .find_map(|b| bad_walk_from(g, colours, max_len / 2, a, b))
    });
    debug_assert!(found.as_ref().is_none_or(|w| is_bad_lazy_walk(g, colours, w)));
    let complete = g.edge_count() == 0;
    Ok(Verdict::new(VerdictKind::BadLazyWalk, Some(max_len), complete, found))
}

/// `v` followed by its neighbours, in increasing order.
fn steps(g: &Graph, v: usize) -> impl Iterator<Item = usize> + '_ {
    let nb = g.neighbours(v);
    let split = nb.partition_point(|&w| w < v);
    nb[..split]
        .iter()
        .copied()
        .chain(std::iter::once(v))
        .chain(nb[split..].iter().copied())
}

fn bad_walk_from(g: &Graph, colours: &[usize], max_half: usize, a0: usize, b0: usize) -> Option<Vec<usize>> {
    // (pair, parent index into `seen`)
    let mut seen: Vec<((usize, usize), usize)> = vec![((a0, b0), usize::MAX)];
    let mut index = std::collections::HashMap::from([((a0, b0), 0usize)]);
    let mut level_start = 0;
    for k in 1..=max_half {
        let level_end = seen.len();
        for i in level_start..level_end {
            if g.is_step(seen[i].0 .0, b0) {
                let mut firsts = Vec::with_capacity(2 * k);
                let mut seconds = Vec::with_capacity(k);
                let mut j = i;
                while j != usize::MAX {
                    firsts.push(seen[j].0 .0);
                    seconds.push(seen[j].0 .1);
                    j = seen[j].1;
                }
                firsts.reverse();
                seconds.reverse();
                firsts.extend(seconds);
                return Some(firsts);
            }
        }
        if k == max_half {
            break;
        }
        for i in level_start..level_end {
            let (a, b) = seen[i].0;
            for x in steps(g, a) {
                for y in steps(g, b) {
                    if y != x && colours[y] == colours[x] && !index.contains_key(&(x, y)) {
                        index.insert((x, y), seen.len());
                        seen.push(((x, y), i));
                    }
                }
            }
        }
        level_start = level_end;
    }
    None
}

pub const EXACT_PI_MAX_VERTICES: usize = 10;
pub const EXACT_PI_MAX_COLOURS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactPi {
    Exact(usize),
    ExceedsCap,
}

/// Smallest `p <= max_colours` admitting a nonrepetitive `p`-colouring.
///
/// Vertices are coloured in index order. A repetition created by colouring
/// `v` must use `v`, and every earlier prefix was already clean, so a single
/// search of `G[0..=v]` after each assignment decides the extension.
pub fn exact_pi(g: &Graph, max_colours: usize) -> Result<ExactPi> {
    if g.n() > EXACT_PI_MAX_VERTICES {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: EXACT_PI_MAX_VERTICES,
        });
    }
    if max_colours > EXACT_PI_MAX_COLOURS {
        return Err(Error::InvalidArgument(format!(
            "colour cap {max_colours} exceeds {EXACT_PI_MAX_COLOURS}"
        )));
    }
    if g.n() == 0 {
        return Ok(if max_colours == 0 { ExactPi::ExceedsCap } else { ExactPi::Exact(0) });
    }
    for p in 1..=max_colours {
        let mut colours = vec![usize::MAX; g.n()];
        let mut allowed = vec![false; g.n()];
        if extend_colouring(g, p, 0, 0, &mut colours, &mut allowed) {
            return Ok(ExactPi::Exact(p));
        }
    }
    Ok(ExactPi::ExceedsCap)
}

fn extend_colouring(
    g: &Graph,
    p: usize,
    v: usize,
    used: usize,
    colours: &mut [usize],
    allowed: &mut [bool],
) -> bool {
    if v == g.n() {
        return true;
    }
    allowed[v] = true;
    // colours are interchangeable, so only one unused colour need be tried
    for colour in 0..p.min(used + 1) {
        if g.neighbours(v).iter().any(|&w| w < v && colours[w] == colour) {
            continue;
        }
        colours[v] = colour;
        let mut search = PathSearch::new(g, colours, g.n() / 2, Some(allowed));
        let clean = (0..=v).all(|s| search.search_from(s).is_none());
        if clean && extend_colouring(g, p, v + 1, used.max(colour + 1), colours, allowed) {
            return true;
        }
    }
    colours[v] = usize::MAX;
    allowed[v] = false;
    false
}
