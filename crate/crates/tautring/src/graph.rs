//! Stable graphs with labeled legs.
//!
//! A stable graph records the combinatorial type of a nodal curve of genus `g`
//! with `n` markings: each vertex carries a geometric genus and a sorted list
//! of leg labels, each edge is an unordered pair of half-edges joining two
//! (possibly equal) vertices. Legs are labeled `1..=n` and are fixed pointwise
//! by isomorphisms; vertices and edges carry no labels of their own.
//!
//! Stability requires `2 g(v) - 2 + n(v) > 0` at every vertex, where `n(v)`
//! counts legs and incident half-edges (a loop counts twice). The genus of the
//! graph is `sum of vertex genera + #edges - #vertices + 1`.
//!
//! Everything here is desk-scale: graphs have a handful of vertices, so
//! canonical forms and isomorphisms are computed by direct search over
//! leg-compatible vertex orderings.

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use crate::{invalid, Result};

/// A marking label, `1..=n`.
pub type Leg = u32;

/// A vertex: geometric genus plus the sorted list of legs it carries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub genus: u32,
    pub legs: Vec<Leg>,
}

/// An edge between vertices `.0 <= .1` (equal for a loop).
pub type Edge = (usize, usize);

/// Which half of an edge: `A` is the end at `edge.0`, `B` the end at `edge.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum End {
    A,
    B,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::A => End::B,
            End::B => End::A,
        }
    }
}

/// One half-edge: an edge index together with an end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Half {
    pub edge: usize,
    pub end: End,
}

impl Half {
    pub fn new(edge: usize, end: End) -> Half {
        Half { edge, end }
    }

    /// The other half of the same edge.
    pub fn other(self) -> Half {
        Half {
            edge: self.edge,
            end: self.end.flip(),
        }
    }
}

/// A connected stable graph. Construct through [`StableGraph::new`], which
/// validates the leg labeling, connectivity and stability.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StableGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl StableGraph {
    /// Builds and validates a stable graph. Legs must partition `1..=n`;
    /// each vertex's leg list is sorted on construction, and edge pairs are
    /// normalized to `.0 <= .1`.
    pub fn new(mut vertices: Vec<Vertex>, mut edges: Vec<Edge>) -> Result<StableGraph> {
        if vertices.is_empty() {
            return Err(invalid!("a stable graph needs at least one vertex"));
        }
        let mut seen = BTreeSet::new();
        for v in &mut vertices {
            v.legs.sort_unstable();
            for &l in &v.legs {
                if l == 0 || !seen.insert(l) {
                    return Err(invalid!(
                        "leg labels must be distinct and positive, got duplicate or zero `{l}`"
                    ));
                }
            }
        }
        let n = seen.len() as Leg;
        if seen.iter().next_back().is_some_and(|&m| m != n) {
            return Err(invalid!("leg labels must be exactly 1..={n}"));
        }
        for e in &mut edges {
            if e.0 >= vertices.len() || e.1 >= vertices.len() {
                return Err(invalid!(
                    "edge ({}, {}) references a missing vertex",
                    e.0,
                    e.1
                ));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        let g = StableGraph { vertices, edges };
        if !g.is_connected() {
            return Err(invalid!("graph is not connected"));
        }
        for (i, v) in g.vertices.iter().enumerate() {
            if 2 * (v.genus as i64) - 2 + (g.valence(i) as i64) <= 0 {
                return Err(invalid!(
                    "vertex {i} (genus {}, {} legs, {} half-edges) is not stable",
                    v.genus,
                    v.legs.len(),
                    g.valence(i) as usize - v.legs.len()
                ));
            }
        }
        Ok(g)
    }

    /// The one-vertex, no-edge graph of genus `g` with legs `1..=n`.
    pub fn trivial(g: u32, n: u32) -> StableGraph {
        StableGraph::new(
            vec![Vertex {
                genus: g,
                legs: (1..=n).collect(),
            }],
            vec![],
        )
        .expect("trivial graph of a stable (g, n) is stable")
    }

    /// Number of legs `n`.
    pub fn n_legs(&self) -> u32 {
        self.vertices.iter().map(|v| v.legs.len() as u32).sum()
    }

    /// First Betti number `#E - #V + 1`.
    pub fn first_betti(&self) -> u32 {
        (self.edges.len() + 1 - self.vertices.len()) as u32
    }

    /// Total (arithmetic) genus.
    pub fn genus(&self) -> u32 {
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + self.first_betti()
    }

    /// `n(v)`: legs plus incident half-edges (loops count twice).
    pub fn valence(&self, v: usize) -> u32 {
        let half_edges = self
            .edges
            .iter()
            .map(|&(a, b)| (a == v) as u32 + (b == v) as u32)
            .sum::<u32>();
        self.vertices[v].legs.len() as u32 + half_edges
    }

    /// The vertex at which a half-edge is attached.
    pub fn vertex_of(&self, h: Half) -> usize {
        let (a, b) = self.edges[h.edge];
        match h.end {
            End::A => a,
            End::B => b,
        }
    }

    /// The vertex carrying leg `l`.
    pub fn leg_vertex(&self, l: Leg) -> usize {
        self.vertices
            .iter()
            .position(|v| v.legs.contains(&l))
            .unwrap_or_else(|| panic!("leg {l} not present"))
    }

    /// All half-edges at `v`, in (edge index, A-before-B) order.
    pub fn half_edges_at(&self, v: usize) -> Vec<Half> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                out.push(Half::new(i, End::A));
            }
            if b == v {
                out.push(Half::new(i, End::B));
            }
        }
        out
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All vertex orderings compatible with the sorted-by-(genus, legs) color
    /// classes: every isomorphic presentation of the graph lists vertices in
    /// one of these orders. Each ordering maps new index -> old index.
    pub fn color_orderings(&self) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<&Vertex, Vec<usize>> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            classes.entry(v).or_default().push(i);
        }
        let mut orders: Vec<Vec<usize>> = vec![vec![]];
        for class in classes.values() {
            let perms = permutations(class);
            orders = orders
                .into_iter()
                .flat_map(|prefix| {
                    perms.iter().map(move |p| {
                        let mut o = prefix.clone();
                        o.extend_from_slice(p);
                        o
                    })
                })
                .collect();
        }
        orders
    }

    /// The canonical representative of the isomorphism class: minimal
    /// (vertices, sorted edge list) over all color-compatible vertex orders.
    pub fn canonical_form(&self) -> StableGraph {
        self.color_orderings()
            .into_iter()
            .map(|order| self.relabeled(&order))
            .min()
            .expect("at least one ordering")
    }

    /// The graph with vertices listed in `order` (new index -> old index).
    fn relabeled(&self, order: &[usize]) -> StableGraph {
        let mut inv = vec![0usize; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        let vertices = order.iter().map(|&o| self.vertices[o].clone()).collect();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (inv[a], inv[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        StableGraph { vertices, edges }
    }

    /// Number of graph automorphisms (vertex/edge permutations and loop flips
    /// fixing every leg).
    pub fn automorphism_count(&self) -> u64 {
        isomorphisms(self, self).len() as u64
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// An isomorphism `g -> h`: a vertex bijection, an edge bijection, and a flip
/// flag per edge (whether the `A` end of `e` maps to the `B` end of its
/// image). Legs are fixed pointwise by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso {
    pub vmap: Vec<usize>,
    pub emap: Vec<usize>,
    pub eflip: Vec<bool>,
}

impl Iso {
    /// Image of a half-edge.
    pub fn half(&self, h: Half) -> Half {
        let end = if self.eflip[h.edge] {
            h.end.flip()
        } else {
            h.end
        };
        Half::new(self.emap[h.edge], end)
    }
}

/// All isomorphisms `g -> h` (empty if the graphs are not isomorphic).
pub fn isomorphisms(g: &StableGraph, h: &StableGraph) -> Vec<Iso> {
    if g.vertices.len() != h.vertices.len() || g.edges.len() != h.edges.len() {
        return vec![];
    }
    // Group vertices by (genus, legs); classes must match across the graphs.
    let mut g_classes: BTreeMap<&Vertex, Vec<usize>> = BTreeMap::new();
    let mut h_classes: BTreeMap<&Vertex, Vec<usize>> = BTreeMap::new();
    for (i, v) in g.vertices.iter().enumerate() {
        g_classes.entry(v).or_default().push(i);
    }
    for (i, v) in h.vertices.iter().enumerate() {
        h_classes.entry(v).or_default().push(i);
    }
    if g_classes.len() != h_classes.len()
        || g_classes
            .iter()
            .zip(h_classes.iter())
            .any(|((cg, ig), (ch, ih))| cg != ch || ig.len() != ih.len())
    {
        return vec![];
    }

    // Candidate vertex maps: per class, g-vertices in order against every
    // permutation of the h-vertices.
    let mut vmaps: Vec<Vec<usize>> = vec![vec![usize::MAX; g.vertices.len()]];
    for (class, g_idx) in &g_classes {
        let h_idx = &h_classes[class];
        let perms = permutations(h_idx);
        vmaps = vmaps
            .into_iter()
            .flat_map(|base| {
                perms.iter().map(move |p| {
                    let mut m = base.clone();
                    for (gi, hi) in g_idx.iter().zip(p.iter()) {
                        m[*gi] = *hi;
                    }
                    m
                })
            })
            .collect();
    }

    let mut out = Vec::new();
    for vmap in vmaps {
        extend_edge_maps(g, h, &vmap, &mut out);
    }
    out
}

/// Completes a vertex map to full isomorphisms by matching edges.
fn extend_edge_maps(g: &StableGraph, h: &StableGraph, vmap: &[usize], out: &mut Vec<Iso>) {
    // Bucket g-edges by their image endpoint pair and h-edges by endpoints.
    let mut g_buckets: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    let mut h_buckets: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        let (x, y) = (vmap[a], vmap[b]);
        g_buckets.entry((x.min(y), x.max(y))).or_default().push(i);
    }
    for (i, &e) in h.edges.iter().enumerate() {
        h_buckets.entry(e).or_default().push(i);
    }
    if g_buckets.len() != h_buckets.len()
        || g_buckets
            .iter()
            .zip(h_buckets.iter())
            .any(|((pg, ig), (ph, ih))| pg != ph || ig.len() != ih.len())
    {
        return;
    }

    // For each bucket choose a bijection; loops additionally choose a flip.
    let buckets: Vec<(&Vec<usize>, &Vec<usize>, bool)> = g_buckets
        .iter()
        .map(|(pair, ig)| (ig, &h_buckets[pair], pair.0 == pair.1))
        .collect();

    let mut emap = vec![usize::MAX; g.edges.len()];
    let mut eflip = vec![false; g.edges.len()];
    assign_buckets(g, h, vmap, &buckets, 0, &mut emap, &mut eflip, out);
}

#[allow(clippy::too_many_arguments)]
fn assign_buckets(
    g: &StableGraph,
    h: &StableGraph,
    vmap: &[usize],
    buckets: &[(&Vec<usize>, &Vec<usize>, bool)],
    k: usize,
    emap: &mut Vec<usize>,
    eflip: &mut Vec<bool>,
    out: &mut Vec<Iso>,
) {
    if k == buckets.len() {
        out.push(Iso {
            vmap: vmap.to_vec(),
            emap: emap.clone(),
            eflip: eflip.clone(),
        });
        return;
    }
    let (g_edges, h_edges, is_loop) = buckets[k];
    for perm in permutations(h_edges) {
        // Determine flips; for loops both orientations are valid.
        let mut flip_choices: Vec<Vec<bool>> = vec![vec![]];
        let mut ok = true;
        for (&ge, &he) in g_edges.iter().zip(perm.iter()) {
            if is_loop {
                flip_choices = flip_choices
                    .into_iter()
                    .flat_map(|c| {
                        [false, true].into_iter().map(move |f| {
                            let mut c2 = c.clone();
                            c2.push(f);
                            c2
                        })
                    })
                    .collect();
            } else {
                let (a, b) = g.edges[ge];
                let (x, y) = h.edges[he];
                let flip = if (vmap[a], vmap[b]) == (x, y) {
                    false
                } else if (vmap[a], vmap[b]) == (y, x) {
                    true
                } else {
                    ok = false;
                    break;
                };
                for c in &mut flip_choices {
                    c.push(flip);
                }
            }
        }
        if !ok {
            continue;
        }
        for flips in flip_choices {
            for ((&ge, &he), &f) in g_edges.iter().zip(perm.iter()).zip(flips.iter()) {
                emap[ge] = he;
                eflip[ge] = f;
            }
            assign_buckets(g, h, vmap, buckets, k + 1, emap, eflip, out);
        }
    }
}

/// Result of contracting a subset of edges: the contracted graph, the map
/// old-vertex -> new-vertex, and for each kept edge its new index plus whether
/// normalization swapped its two ends.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: StableGraph,
    pub vmap: Vec<usize>,
    /// Indexed by old edge: `None` if contracted, `Some((new index, flipped))`.
    pub emap: Vec<Option<(usize, bool)>>,
}

/// Contracts every edge `e` with `keep[e] == false`. Contracting a loop (or a
/// cycle of contracted edges) raises the genus of the receiving vertex by the
/// first Betti number of the contracted piece.
pub fn contract_edges(g: &StableGraph, keep: &[bool]) -> Contraction {
    assert_eq!(keep.len(), g.edges.len());
    // Union-find over vertices joined by contracted edges.
    let mut parent: Vec<usize> = (0..g.vertices.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if !keep[i] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    // New vertex order: classes by smallest old member.
    let roots: Vec<usize> = (0..g.vertices.len())
        .map(|v| find(&mut parent, v))
        .collect();
    let mut new_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for &r in roots.iter() {
        let next = new_of_root.len();
        new_of_root.entry(r).or_insert(next);
    }
    let vmap: Vec<usize> = roots.iter().map(|r| new_of_root[r]).collect();
    let class_count = new_of_root.len();

    // Genus: sum of member genera plus h^1 of the contracted subgraph of the class.
    let mut genus = vec![0u32; class_count];
    let mut legs: Vec<Vec<Leg>> = vec![vec![]; class_count];
    let mut class_size = vec![0u32; class_count];
    for (v, vert) in g.vertices.iter().enumerate() {
        let c = vmap[v];
        genus[c] += vert.genus;
        legs[c].extend_from_slice(&vert.legs);
        class_size[c] += 1;
    }
    let mut contracted_in_class = vec![0u32; class_count];
    for (i, &(a, _)) in g.edges.iter().enumerate() {
        if !keep[i] {
            contracted_in_class[vmap[a]] += 1;
        }
    }
    for c in 0..class_count {
        genus[c] += contracted_in_class[c] + 1 - class_size[c];
        legs[c].sort_unstable();
    }

    let mut edges = Vec::new();
    let mut emap = vec![None; g.edges.len()];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if keep[i] {
            let (x, y) = (vmap[a], vmap[b]);
            let flipped = x > y;
            emap[i] = Some((edges.len(), flipped));
            edges.push((x.min(y), x.max(y)));
        }
    }
    let vertices = genus
        .into_iter()
        .zip(legs)
        .map(|(genus, legs)| Vertex { genus, legs })
        .collect();
    Contraction {
        graph: StableGraph { vertices, edges },
        vmap,
        emap,
    }
}

/// Glues legs `n-1` and `n` of a graph on `(g, n)` into a new edge, producing
/// a graph of genus `g + 1` with `n - 2` legs. The new edge is appended last;
/// the returned halves are the images of legs `n-1` and `n`.
pub fn glue_loop_graph(g: &StableGraph) -> Result<(StableGraph, Half, Half)> {
    let n = g.n_legs();
    if n < 2 {
        return Err(invalid!(
            "gluing the last two legs needs n >= 2, got n = {n}"
        ));
    }
    let (va, vb) = (g.leg_vertex(n - 1), g.leg_vertex(n));
    let mut vertices = g.vertices.clone();
    for v in &mut vertices {
        v.legs.retain(|&l| l != n - 1 && l != n);
    }
    let mut edges = g.edges.clone();
    let idx = edges.len();
    edges.push((va.min(vb), va.max(vb)));
    let (ha, hb) = if va <= vb {
        (Half::new(idx, End::A), Half::new(idx, End::B))
    } else {
        (Half::new(idx, End::B), Half::new(idx, End::A))
    };
    let glued = StableGraph { vertices, edges };
    // Stability is unchanged (each vertex keeps its valence); re-validate cheaply.
    debug_assert!(glued.is_connected());
    Ok((glued, ha, hb))
}

type EnumKey = (u32, u32, usize);
static ENUM_CACHE: Lazy<Mutex<HashMap<EnumKey, Arc<Vec<StableGraph>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// All isomorphism classes of stable graphs of genus `g` with legs `1..=n`
/// and at most `max_edges` edges, as canonical forms in sorted order.
/// Results are cached per `(g, n, max_edges)`.
pub fn enumerate_stable_graphs(g: u32, n: u32, max_edges: usize) -> Arc<Vec<StableGraph>> {
    let key = (g, n, max_edges);
    if let Some(hit) = ENUM_CACHE.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let mut found: BTreeSet<StableGraph> = BTreeSet::new();
    for e in 0..=max_edges {
        enumerate_with_edges(g, n, e, &mut found);
    }
    let result = Arc::new(found.into_iter().collect::<Vec<_>>());
    ENUM_CACHE.lock().unwrap().insert(key, result.clone());
    result
}

fn enumerate_with_edges(g: u32, n: u32, e: usize, found: &mut BTreeSet<StableGraph>) {
    // #V ranges over 1..=e+1 (connectivity), h1 = e - #V + 1 <= g.
    for nv in 1..=(e + 1) {
        let h1 = (e + 1 - nv) as u32;
        if h1 > g {
            continue;
        }
        let genus_total = g - h1;
        // Distribute genus_total over nv vertices.
        for genera in compositions(genus_total, nv) {
            // Distribute legs 1..=n over vertices.
            for assignment in leg_assignments(n, nv) {
                // Multisets of e unordered vertex pairs (with loops).
                let pairs = vertex_pairs(nv);
                for edge_multiset in multisets(&pairs, e) {
                    let vertices: Vec<Vertex> = (0..nv)
                        .map(|v| Vertex {
                            genus: genera[v],
                            legs: assignment[v].clone(),
                        })
                        .collect();
                    let cand = StableGraph {
                        vertices,
                        edges: edge_multiset,
                    };
                    if is_valid_stable(&cand) {
                        found.insert(cand.canonical_form());
                    }
                }
            }
        }
    }
}

fn is_valid_stable(g: &StableGraph) -> bool {
    g.is_connected()
        && (0..g.vertices.len())
            .all(|v| 2 * (g.vertices[v].genus as i64) - 2 + (g.valence(v) as i64) > 0)
}

/// All ways to write `total` as an ordered sum of `parts` non-negatives.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn leg_assignments(n: u32, nv: usize) -> Vec<Vec<Vec<Leg>>> {
    let mut out: Vec<Vec<Vec<Leg>>> = vec![vec![vec![]; nv]];
    for leg in 1..=n {
        out = out
            .into_iter()
            .flat_map(|base| {
                (0..nv).map(move |v| {
                    let mut a = base.clone();
                    a[v].push(leg);
                    a
                })
            })
            .collect();
    }
    out
}

fn vertex_pairs(nv: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for a in 0..nv {
        for b in a..nv {
            out.push((a, b));
        }
    }
    out
}

/// All multisets of size `k` drawn from `items` (kept sorted).
fn multisets(items: &[Edge], k: usize) -> Vec<Vec<Edge>> {
    fn rec(items: &[Edge], start: usize, k: usize, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, i, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, 0, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(genus: u32, legs: &[Leg]) -> Vertex {
        Vertex {
            genus,
            legs: legs.to_vec(),
        }
    }

    #[test]
    fn construction_validates() {
        // Loop on a genus-0 vertex with two legs: the glued (1,2)-boundary.
        let g = StableGraph::new(vec![v(0, &[1, 2])], vec![(0, 0)]).unwrap();
        assert_eq!(g.genus(), 1);
        assert_eq!(g.n_legs(), 2);
        assert_eq!(g.valence(0), 4);

        // Unstable: genus-0 vertex with a single leg and a single half-edge.
        assert!(StableGraph::new(vec![v(0, &[1]), v(1, &[2])], vec![(0, 1)]).is_err());
        // Disconnected.
        assert!(StableGraph::new(vec![v(1, &[1]), v(1, &[2])], vec![]).is_err());
        // Bad legs.
        assert!(StableGraph::new(vec![v(1, &[1, 3])], vec![]).is_err());
    }

    #[test]
    fn automorphism_counts() {
        // Loop: identity and the half-edge swap.
        let loop_g = StableGraph::new(vec![v(1, &[1])], vec![(0, 0)]).unwrap();
        assert_eq!(loop_g.automorphism_count(), 2);

        // Banana with three parallel edges between leg-bearing vertices: 3!.
        let theta = StableGraph::new(vec![v(0, &[1]), v(0, &[2])], vec![(0, 1); 3]).unwrap();
        assert_eq!(theta.automorphism_count(), 6);

        // Two legless genus-1 vertices joined by one edge: the swap.
        let dumbbell = StableGraph::new(vec![v(1, &[]), v(1, &[])], vec![(0, 1)]).unwrap();
        assert_eq!(dumbbell.automorphism_count(), 2);

        // (0,4) cross-ratio boundary: rigid.
        let d = StableGraph::new(vec![v(0, &[1, 3]), v(0, &[2, 4])], vec![(0, 1)]).unwrap();
        assert_eq!(d.automorphism_count(), 1);

        // Two parallel edges plus distinct legs: 2! from the edge swap.
        let b2 = StableGraph::new(vec![v(0, &[1]), v(0, &[2])], vec![(0, 1); 2]).unwrap();
        assert_eq!(b2.automorphism_count(), 2);
    }

    #[test]
    fn canonical_form_is_invariant() {
        // Same graph presented with vertices in two orders.
        let a = StableGraph::new(vec![v(0, &[1, 2]), v(1, &[])], vec![(0, 1)]).unwrap();
        let b = StableGraph::new(vec![v(1, &[]), v(0, &[1, 2])], vec![(0, 1)]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        assert_eq!(a.canonical_form().canonical_form(), a.canonical_form());
        assert_eq!(isomorphisms(&a, &b).len(), 1);
    }

    #[test]
    fn enumerate_small_spaces() {
        // Genus 1 with 2 legs, at most 1 edge: trivial, loop, separating tail.
        assert_eq!(enumerate_stable_graphs(1, 2, 1).len(), 3);
        // All strata of the moduli of genus-2 curves: 7 graphs with <= 3 edges.
        assert_eq!(enumerate_stable_graphs(2, 0, 3).len(), 7);
        assert_eq!(enumerate_stable_graphs(2, 0, 2).len(), 5);
        // (0, 4): trivial plus the three cross-ratio boundaries.
        assert_eq!(enumerate_stable_graphs(0, 4, 1).len(), 4);
        // (0, 5): trivial + 10 one-edge + 15 two-edge graphs.
        assert_eq!(enumerate_stable_graphs(0, 5, 2).len(), 26);
    }

    #[test]
    fn contraction_merges_and_raises_genus() {
        // Dumbbell with loops: contract everything -> one genus-3 vertex? No:
        // two genus-1 vertices, one joining edge, one loop on each vertex.
        let g = StableGraph::new(vec![v(1, &[]), v(1, &[])], vec![(0, 1), (0, 0), (1, 1)]).unwrap();
        assert_eq!(g.genus(), 4);
        let c = contract_edges(&g, &[false, false, false]);
        assert_eq!(c.graph.vertices.len(), 1);
        assert_eq!(c.graph.edges.len(), 0);
        assert_eq!(c.graph.vertices[0].genus, 4);

        // Keep the loop at vertex 1 only.
        let c = contract_edges(&g, &[false, false, true]);
        assert_eq!(c.graph.vertices.len(), 1);
        assert_eq!(c.graph.edges, vec![(0, 0)]);
        assert_eq!(c.graph.vertices[0].genus, 3);
        assert_eq!(c.emap, vec![None, None, Some((0, false))]);
    }

    #[test]
    fn glue_loop_makes_edge() {
        let g = StableGraph::trivial(0, 4);
        let (glued, ha, hb) = glue_loop_graph(&g).unwrap();
        assert_eq!(glued.genus(), 1);
        assert_eq!(glued.n_legs(), 2);
        assert_eq!(glued.edges, vec![(0, 0)]);
        assert_eq!(ha.edge, 0);
        assert_eq!(hb.edge, 0);
        assert_ne!(ha.end, hb.end);

        let d = StableGraph::new(vec![v(0, &[1, 3]), v(0, &[2, 4])], vec![(0, 1)]).unwrap();
        let (glued, _, _) = glue_loop_graph(&d).unwrap();
        assert_eq!(glued.genus(), 1);
        assert_eq!(glued.edges.len(), 2);
    }
}
