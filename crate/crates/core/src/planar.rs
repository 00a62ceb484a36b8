//! Product structures `G ⊆ H ⊠ P ⊠ K_ℓ`: ingestion, validation, a tripod
//! construction for planar triangulations, and the colouring pipelines that
//! pull a colouring of the product back to `G`.
//!
//! # Construction
//!
//! Faces are recovered from the graph alone: in a triangulation on at least
//! four vertices they are exactly the triangles whose removal leaves the graph
//! connected. Vertex 0 is the BFS root, each vertex's tree parent is its least
//! neighbour one layer up, and the first face containing 0 is the outer face,
//! whose three vertices seed three single-vertex parts.
//!
//! Each region is a disc of faces bounded by a cycle made of at most three
//! arcs, one per part. The arcs get colours 0, 1, 2 (splitting a part if fewer
//! than three are present), every interior vertex takes the colour of the arc
//! where its tree path first meets the boundary, and a face with all three
//! colours is picked. The tree paths from that face's interior vertices up to
//! the boundary form the legs of a new part (a tripod); leg `j` gets copy
//! index `j`. Cutting along the face and the legs splits the region into
//! discs, each bounded by two old arcs and the new tripod. The bag of a region
//! holds its boundary parts and its tripod, so the quotient `H` gets a
//! decomposition of width at most 3 by construction.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components_within, is_connected, Graph};
use crate::layering::bfs_distances;
use crate::treedecomp::{heuristic_td, simplify_td, validate_td, width, TreeDecomposition};
use crate::twcolour::{strongly_nonrepetitive_colouring, Colouring};
use crate::words::path_colouring_4;

/// Where a vertex sits in `H ⊠ P ⊠ K_ℓ`; JSON form `[h, p, q]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct Placement {
    pub h: usize,
    pub p: usize,
    pub q: usize,
}

impl From<[usize; 3]> for Placement {
    fn from([h, p, q]: [usize; 3]) -> Self {
        Placement { h, p, q }
    }
}

impl From<Placement> for [usize; 3] {
    fn from(x: Placement) -> Self {
        [x.h, x.p, x.q]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure")]
pub struct ProductStructure {
    ell: usize,
    #[serde(rename = "H")]
    h: Graph,
    placement: Vec<Placement>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    ell: usize,
    #[serde(rename = "H")]
    h: Graph,
    placement: Vec<Placement>,
}

impl TryFrom<RawStructure> for ProductStructure {
    type Error = Error;
    fn try_from(r: RawStructure) -> Result<Self> {
        ProductStructure::new(r.ell, r.h, r.placement)
    }
}

impl ProductStructure {
    /// Checks field ranges only; see [`validate_product_structure`] for the
    /// embedding itself.
    pub fn new(ell: usize, h: Graph, placement: Vec<Placement>) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidStructure("ell must be at least 1".into()));
        }
        for (v, x) in placement.iter().enumerate() {
            if x.h >= h.n() {
                return Err(Error::InvalidStructure(format!(
                    "vertex {v} placed on node {} but H has {} vertices",
                    x.h,
                    h.n()
                )));
            }
            if x.q >= ell {
                return Err(Error::InvalidStructure(format!(
                    "vertex {v} has copy index {} but ell is {ell}",
                    x.q
                )));
            }
        }
        Ok(ProductStructure { ell, h, placement })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    pub fn placement(&self) -> &[Placement] {
        &self.placement
    }

    /// Number of path layers used (largest `p` plus one).
    pub fn layer_count(&self) -> usize {
        self.placement.iter().map(|x| x.p + 1).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structure serializes")
    }
}

pub fn parse_product_structure(text: &str) -> Result<ProductStructure> {
    serde_json::from_str(text).map_err(|e| Error::InvalidStructure(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureViolation {
    /// Two vertices share a triple.
    NotInjective { u: usize, v: usize },
    /// An edge joins parts that are distinct and not adjacent in `H`.
    NotInH { u: usize, v: usize },
    /// An edge joins layers more than one apart.
    LayerGap { u: usize, v: usize },
}

/// First failure of injectivity (by vertex pair), then of the edge condition
/// (by sorted edge).
pub fn validate_product_structure(g: &Graph, s: &ProductStructure) -> Result<Option<StructureViolation>> {
    if s.placement.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            actual: s.placement.len(),
        });
    }
    let mut owner: HashMap<Placement, usize> = HashMap::with_capacity(g.n());
    for (v, &x) in s.placement.iter().enumerate() {
        if let Some(&u) = owner.get(&x) {
            return Ok(Some(StructureViolation::NotInjective { u, v }));
        }
        owner.insert(x, v);
    }
    for &(u, v) in g.edges() {
        let (a, b) = (s.placement[u], s.placement[v]);
        if a.h != b.h && !s.h.has_edge(a.h, b.h) {
            return Ok(Some(StructureViolation::NotInH { u, v }));
        }
        if a.p.abs_diff(b.p) > 1 {
            return Ok(Some(StructureViolation::LayerGap { u, v }));
        }
    }
    Ok(None)
}

/// The faces of a triangulation as sorted triples, in lexicographic order.
///
/// Checks `|E| = 3n - 6`, that every edge lies on exactly two faces, that
/// there are `2n - 4` faces and that the faces around each vertex close up
/// into one cycle. Together with Euler's formula this makes the faces a
/// triangulated sphere.
pub fn triangulation_faces(g: &Graph) -> Result<Vec<[usize; 3]>> {
    let n = g.n();
    let bad = |m: String| Err(Error::NotTriangulation(m));
    if n < 3 {
        return bad(format!("{n} vertices"));
    }
    if n == 3 {
        if g.edge_count() != 3 {
            return bad("three vertices but not a triangle".into());
        }
        return Ok(vec![[0, 1, 2], [0, 1, 2]]);
    }
    if g.edge_count() != 3 * n - 6 {
        return bad(format!("{} edges, expected {}", g.edge_count(), 3 * n - 6));
    }
    if !is_connected(g) {
        return bad("not connected".into());
    }
    let mut faces = Vec::new();
    let mut keep = vec![true; n];
    for u in 0..n {
        for &v in g.neighbours(u).iter().filter(|&&v| v > u) {
            for &w in g.neighbours(v).iter().filter(|&&w| w > v) {
                if g.has_edge(u, w) {
                    for x in [u, v, w] {
                        keep[x] = false;
                    }
                    if components_within(g, &keep).len() == 1 {
                        faces.push([u, v, w]);
                    }
                    for x in [u, v, w] {
                        keep[x] = true;
                    }
                }
            }
        }
    }
    if faces.len() != 2 * n - 4 {
        return bad(format!("{} faces, expected {}", faces.len(), 2 * n - 4));
    }
    let incidence = edge_faces(&faces);
    if let Some((&(u, v), f)) = incidence.iter().find(|(_, f)| f.len() != 2) {
        return bad(format!("edge ({u}, {v}) lies on {} faces", f.len()));
    }
    for v in 0..n {
        if !link_is_cycle(g, &faces, v) {
            return bad(format!("faces around vertex {v} do not form a single cycle"));
        }
    }
    Ok(faces)
}

fn edge_faces(faces: &[[usize; 3]]) -> HashMap<(usize, usize), Vec<usize>> {
    let mut map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for e in face_edges(f) {
            map.entry(e).or_default().push(i);
        }
    }
    map
}

fn face_edges(&[a, b, c]: &[usize; 3]) -> [(usize, usize); 3] {
    let e = |x: usize, y: usize| (x.min(y), x.max(y));
    [e(a, b), e(b, c), e(a, c)]
}

fn link_is_cycle(g: &Graph, faces: &[[usize; 3]], v: usize) -> bool {
    let mut link: HashMap<usize, Vec<usize>> = HashMap::new();
    for f in faces.iter().filter(|f| f.contains(&v)) {
        let others: Vec<usize> = f.iter().copied().filter(|&x| x != v).collect();
        link.entry(others[0]).or_default().push(others[1]);
        link.entry(others[1]).or_default().push(others[0]);
    }
    let deg = g.degree(v);
    if link.len() != deg || link.values().any(|nb| nb.len() != 2) {
        return false;
    }
    let start = g.neighbours(v)[0];
    let (mut prev, mut cur, mut steps) = (start, link[&start][0], 1);
    while cur != start {
        let nb = &link[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > deg {
            return false;
        }
    }
    steps == deg
}

/// A computed structure together with the decomposition of `H` it certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarProductStructure {
    pub structure: ProductStructure,
    pub h_td: TreeDecomposition,
}

struct Region {
    faces: Vec<usize>,
    boundary: Vec<usize>,
    /// Decomposition node of the nearest enclosing region that has one.
    parent_node: Option<usize>,
}

/// Product structure with `ℓ = 3` for a planar triangulation, with a
/// decomposition of `H` of width at most 3. The output is always checked by
/// [`validate_product_structure`] and [`validate_td`] before it is returned.
pub fn compute_product_structure(g: &Graph) -> Result<PlanarProductStructure> {
    let faces = triangulation_faces(g)?;
    let n = g.n();
    let depth = bfs_distances(g, 0);
    let parent: Vec<usize> = (0..n)
        .map(|v| {
            g.neighbours(v)
                .iter()
                .copied()
                .find(|&w| depth[w] + 1 == depth[v])
                .unwrap_or(usize::MAX)
        })
        .collect();
    let incidence = edge_faces(&faces);

    let mut part = vec![usize::MAX; n];
    let mut leg = vec![0usize; n];
    let outer = faces[0];
    for (i, &v) in outer.iter().enumerate() {
        part[v] = i;
    }
    let mut parts = 3;
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut tree: Vec<(usize, usize)> = Vec::new();

    // per-vertex scratch, reset after each region
    let mut on_boundary = vec![usize::MAX; n];
    let mut interior = vec![false; n];
    let mut colour = vec![usize::MAX; n];
    let mut in_region = vec![false; faces.len()];

    let mut stack = vec![Region {
        faces: (1..faces.len()).collect(),
        boundary: outer.to_vec(),
        parent_node: None,
    }];
    while let Some(region) = stack.pop() {
        let arcs = boundary_arcs(&region.boundary, &part)?;
        let bparts: Vec<usize> = arcs.iter().map(|&(_, _, p)| p).collect();
        for (i, &v) in region.boundary.iter().enumerate() {
            on_boundary[v] = i;
        }
        let inner: BTreeSet<usize> = region
            .faces
            .iter()
            .flat_map(|&f| faces[f])
            .filter(|&v| on_boundary[v] == usize::MAX)
            .collect();
        if inner.is_empty() {
            if region.parent_node.is_none() {
                bags.push(bparts);
            }
            for &v in &region.boundary {
                on_boundary[v] = usize::MAX;
            }
            continue;
        }
        for &v in &inner {
            interior[v] = true;
        }

        let arc_colour = three_colours(&arcs, region.boundary.len());
        for &v in &inner {
            colour_by_first_hit(v, &parent, &interior, &on_boundary, &arc_colour, &mut colour)?;
        }
        let colour_of = |v: usize| {
            if on_boundary[v] != usize::MAX {
                arc_colour[on_boundary[v]]
            } else {
                colour[v]
            }
        };
        let tau = region
            .faces
            .iter()
            .copied()
            .find(|&f| {
                let mut seen = [false; 3];
                faces[f].iter().for_each(|&v| seen[colour_of(v)] = true);
                seen == [true; 3]
            })
            .ok_or_else(|| Error::Construction("region has no trichromatic face".into()))?;

        let mut corner = [usize::MAX; 3];
        for &v in &faces[tau] {
            corner[colour_of(v)] = v;
        }
        let mut cut: BTreeSet<(usize, usize)> = face_edges(&faces[tau]).into_iter().collect();
        let mut legs: [Vec<usize>; 3] = Default::default();
        for (j, &v) in corner.iter().enumerate() {
            let mut x = v;
            while interior[x] {
                legs[j].push(x);
                x = parent[x];
            }
            if let Some(&top) = legs[j].last() {
                cut.insert((top.min(x), top.max(x)));
            }
            for w in legs[j].windows(2) {
                cut.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        let mut bag = bparts.clone();
        if legs.iter().any(|l| !l.is_empty()) {
            let y = parts;
            parts += 1;
            for (j, l) in legs.iter().enumerate() {
                for &v in l {
                    part[v] = y;
                    leg[v] = j;
                }
            }
            bag.push(y);
        }
        let node = bags.len();
        bags.push(bag);
        if let Some(p) = region.parent_node {
            tree.push((p, node));
        }

        for &f in &region.faces {
            in_region[f] = f != tau;
        }
        let children = split_faces(&region.faces, tau, &faces, &incidence, &cut, &in_region);
        for &f in &region.faces {
            in_region[f] = false;
        }
        for &v in &inner {
            interior[v] = false;
            colour[v] = usize::MAX;
        }
        for &v in &region.boundary {
            on_boundary[v] = usize::MAX;
        }
        for child in children.into_iter().rev() {
            let boundary = boundary_cycle(&child, &faces)?;
            stack.push(Region {
                faces: child,
                boundary,
                parent_node: Some(node),
            });
        }
    }

    if let Some(v) = part.iter().position(|&p| p == usize::MAX) {
        return Err(Error::Construction(format!("vertex {v} was never assigned a part")));
    }
    let h_edges: BTreeSet<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| part[u] != part[v])
        .map(|&(u, v)| (part[u].min(part[v]), part[u].max(part[v])))
        .collect();
    let h = Graph::from_edges(parts, h_edges)?;
    let h_td = simplify_td(&TreeDecomposition::new(parts, bags, tree)?);
    if let Some(v) = validate_td(&h, &h_td) {
        return Err(Error::Construction(format!("decomposition of H is invalid: {v:?}")));
    }
    let placement = (0..n)
        .map(|v| Placement {
            h: part[v],
            p: depth[v],
            q: leg[v],
        })
        .collect();
    let structure = ProductStructure::new(3, h, placement)?;
    if let Some(v) = validate_product_structure(g, &structure)? {
        return Err(Error::Construction(format!("structure fails validation: {v:?}")));
    }
    Ok(PlanarProductStructure { structure, h_td })
}

/// Maximal runs of one part along the cycle as `(start, len, part)`, starting
/// at a run boundary. Errors if a part occurs in two runs or there are more
/// than three runs.
fn boundary_arcs(boundary: &[usize], part: &[usize]) -> Result<Vec<(usize, usize, usize)>> {
    let len = boundary.len();
    let pt = |i: usize| part[boundary[i % len]];
    let start = (0..len).find(|&i| pt(i + len - 1) != pt(i)).unwrap_or(0);
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
    for k in 0..len {
        let i = (start + k) % len;
        match arcs.last_mut() {
            Some(a) if a.2 == pt(i) => a.1 += 1,
            _ => arcs.push((i, 1, pt(i))),
        }
    }
    let distinct: BTreeSet<usize> = arcs.iter().map(|a| a.2).collect();
    if distinct.len() != arcs.len() || arcs.len() > 3 {
        return Err(Error::Construction(format!(
            "region boundary splits into {} arcs over {} parts",
            arcs.len(),
            distinct.len()
        )));
    }
    Ok(arcs)
}

/// Colour per boundary position so that the three colours form three
/// nonempty consecutive arcs, each inside one part.
fn three_colours(arcs: &[(usize, usize, usize)], len: usize) -> Vec<usize> {
    let mut pieces: Vec<(usize, usize)> = arcs.iter().map(|&(s, l, _)| (s, l)).collect();
    while pieces.len() < 3 {
        let (i, &(s, l)) = pieces
            .iter()
            .enumerate()
            .max_by_key(|&(i, &(_, l))| (l, std::cmp::Reverse(i)))
            .expect("boundary is nonempty");
        let first = if pieces.len() == 1 { 1 } else { l / 2 };
        pieces[i] = (s, first);
        pieces.insert(i + 1, ((s + first) % len, l - first));
    }
    let mut out = vec![0; len];
    for (c, &(s, l)) in pieces.iter().enumerate() {
        for k in 0..l {
            out[(s + k) % len] = c;
        }
    }
    out
}

fn colour_by_first_hit(
    v: usize,
    parent: &[usize],
    interior: &[bool],
    on_boundary: &[usize],
    arc_colour: &[usize],
    colour: &mut [usize],
) -> Result<()> {
    let mut chain = Vec::new();
    let mut x = v;
    let c = loop {
        if colour[x] != usize::MAX {
            break colour[x];
        }
        if on_boundary[x] != usize::MAX {
            break arc_colour[on_boundary[x]];
        }
        if !interior[x] || parent[x] == usize::MAX {
            return Err(Error::Construction(format!(
                "tree path from {v} leaves its region without meeting the boundary"
            )));
        }
        chain.push(x);
        x = parent[x];
    };
    for y in chain {
        colour[y] = c;
    }
    Ok(())
}

/// Components of the region's faces minus `tau`, joined across uncut edges.
fn split_faces(
    region: &[usize],
    tau: usize,
    faces: &[[usize; 3]],
    incidence: &HashMap<(usize, usize), Vec<usize>>,
    cut: &BTreeSet<(usize, usize)>,
    in_region: &[bool],
) -> Vec<Vec<usize>> {
    let mut seen: HashMap<usize, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut order: Vec<usize> = region.iter().copied().filter(|&f| f != tau).collect();
    order.sort_unstable();
    for &f0 in &order {
        if seen.contains_key(&f0) {
            continue;
        }
        seen.insert(f0, ());
        let mut comp = vec![f0];
        let mut stack = vec![f0];
        while let Some(f) = stack.pop() {
            for e in face_edges(&faces[f]) {
                if cut.contains(&e) {
                    continue;
                }
                for &h in &incidence[&e] {
                    if h != f && in_region[h] && !seen.contains_key(&h) {
                        seen.insert(h, ());
                        comp.push(h);
                        stack.push(h);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The cycle of edges lying on exactly one face of `region`, read from its
/// least vertex towards the smaller neighbour.
fn boundary_cycle(region: &[usize], faces: &[[usize; 3]]) -> Result<Vec<usize>> {
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    for &f in region {
        for e in face_edges(&faces[f]) {
            *count.entry(e).or_default() += 1;
        }
    }
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for (&(u, v), _) in count.iter().filter(|(_, &c)| c == 1) {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let not_disc = || Error::Construction("region is not bounded by a simple cycle".into());
    if adj.values().any(|nb| nb.len() != 2) {
        return Err(not_disc());
    }
    let start = *adj.keys().min().ok_or_else(not_disc)?;
    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, *adj[&start].iter().min().unwrap());
    while cur != start {
        cycle.push(cur);
        let nb = &adj[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        if cycle.len() > adj.len() {
            return Err(not_disc());
        }
    }
    if cycle.len() != adj.len() {
        return Err(not_disc());
    }
    Ok(cycle)
}

/// Result of a product-structure colouring pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineColouring {
    pub colouring: Colouring,
    /// `256 * ℓ`, the bound the pipeline guarantees when `H` has width ≤ 3.
    pub bound: u64,
    pub h_width: usize,
    /// Whether the decomposition of `H` had width at most 3, so that the
    /// palette is guaranteed to respect `bound`.
    pub certified: bool,
}

/// Colouring with at most `4^3 * 4 * 3 = 768` colours for a graph with a
/// structure of copy count 3 over an `H` of treewidth at most 3.
pub fn colour_planar(g: &Graph, s: &ProductStructure, h_td: Option<&TreeDecomposition>) -> Result<PipelineColouring> {
    if s.ell != 3 {
        return Err(Error::InvalidArgument(format!(
            "planar pipeline needs ell = 3, structure has {}",
            s.ell
        )));
    }
    colour_genus(g, s, h_td)
}

/// Colouring with at most `256 * ℓ` colours: strongly nonrepetitive
/// colouring of `H`, times a path factor, times a clique factor of size `ℓ`,
/// read off at each vertex's placement.
///
/// Without `h_td` a min-fill decomposition of `H` is used.
pub fn colour_genus(g: &Graph, s: &ProductStructure, h_td: Option<&TreeDecomposition>) -> Result<PipelineColouring> {
    if let Some(v) = validate_product_structure(g, s)? {
        return Err(Error::InvalidStructure(format!("{v:?}")));
    }
    let td = match h_td {
        Some(td) => td.clone(),
        None => heuristic_td(&s.h),
    };
    let phi_h = strongly_nonrepetitive_colouring(&s.h, &td)?;
    let h_width = if s.h.n() == 0 { 0 } else { width(&td)? };
    let layers = path_colouring_4(s.layer_count());
    let ell = s.ell;
    let colours = s
        .placement
        .iter()
        .map(|x| (phi_h.colour(x.h) * 4 + layers.colours()[x.p] as usize) * ell + x.q)
        .collect();
    let colouring = Colouring::new(colours, phi_h.palette() * 4 * ell)?;
    Ok(PipelineColouring {
        colouring,
        bound: 256 * ell as u64,
        h_width,
        certified: h_width <= 3,
    })
}
