//! Exhaustive small-graph families up to isomorphism, and the fixed test
//! corpus built from them.

use std::collections::{BTreeMap, BTreeSet};

use crate::decomposition::decompose;
use crate::graph::{named, Graph, Vertex};

/// Adjacency rows of the lexicographically smallest relabelling onto
/// `0..n`. Equal for two graphs exactly when they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u32>);

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let vs: Vec<Vertex> = g.vertices().collect();
    let n = vs.len();
    assert!(n <= 32, "canonical forms are for small graphs");
    let index: BTreeMap<Vertex, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<u32> = vs
        .iter()
        .map(|&v| g.neighbors(v).fold(0u32, |m, w| m | 1 << index[&w]))
        .collect();

    let cells = refine(&adj);
    let mut best: Option<Vec<u32>> = None;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(&adj, &cells, 0, &mut order, &mut used, &mut best);
    CanonicalForm(best.unwrap_or_default())
}

/// Colour refinement; returns the vertex cells in a labelling-invariant order.
fn refine(adj: &[u32]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut colour: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let rank: BTreeMap<&(usize, Vec<usize>), usize> = distinct.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        let before: BTreeSet<usize> = colour.iter().copied().collect();
        let stable = rank.len() == before.len();
        colour = next;
        if stable {
            break;
        }
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    cells.into_values().collect()
}

fn search(
    adj: &[u32],
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<Vec<u32>>,
) {
    if cell == cells.len() {
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let code: Vec<u32> = order
            .iter()
            .map(|&v| pos.iter().fold(0u32, |m, (&w, &p)| if adj[v] >> w & 1 == 1 { m | 1 << p } else { m }))
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let members = &cells[cell];
    let placed = order.len();
    let target = placed + members.len();
    permute(adj, cells, cell, members, target, order, used, best);
}

#[allow(clippy::too_many_arguments)]
fn permute(
    adj: &[u32],
    cells: &[Vec<usize>],
    cell: usize,
    members: &[usize],
    target: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<Vec<u32>>,
) {
    if order.len() == target {
        search(adj, cells, cell + 1, order, used, best);
        return;
    }
    for &v in members {
        if !used[v] {
            used[v] = true;
            order.push(v);
            permute(adj, cells, cell, members, target, order, used, best);
            order.pop();
            used[v] = false;
        }
    }
}

/// The graph on `0..n` described by a canonical form.
pub fn from_canonical(c: &CanonicalForm) -> Graph {
    let mut g = Graph::new();
    for (v, &row) in c.0.iter().enumerate() {
        g.add_vertex(v as Vertex);
        for w in v + 1..c.0.len() {
            if row >> w & 1 == 1 {
                g.add_edge(v as Vertex, w as Vertex).expect("no loops in a canonical form");
            }
        }
    }
    g
}

fn dedupe(gs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let forms: BTreeSet<CanonicalForm> = gs.into_iter().map(|g| canonical_form(&g)).collect();
    forms.iter().map(from_canonical).collect()
}

/// All graphs on `n` vertices, one per isomorphism class.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut layer = vec![Graph::new()];
    for k in 0..n {
        layer = dedupe(layer.iter().flat_map(|g| {
            (0u32..1 << k).map(move |mask| {
                let mut h = g.clone();
                h.add_vertex(k as Vertex);
                for w in 0..k {
                    if mask >> w & 1 == 1 {
                        h.add_edge(k as Vertex, w as Vertex).unwrap();
                    }
                }
                h
            })
        }));
    }
    layer
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(|g| n > 0 && g.is_connected()).collect()
}

/// 2-connected graphs on `n >= 3` vertices.
pub fn biconnected_graphs(n: usize) -> Vec<Graph> {
    if n < 3 {
        return Vec::new();
    }
    connected_graphs(n)
        .into_iter()
        .filter(|g| decompose(g).map(|d| d.blocks.len() == 1).unwrap_or(false))
        .collect()
}

/// Trees on `n` vertices, by leaf addition.
pub fn trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut layer = vec![{
        let mut g = Graph::new();
        g.add_vertex(0);
        g
    }];
    for k in 1..n {
        layer = dedupe(layer.iter().flat_map(|t| {
            (0..k).map(move |at| {
                let mut h = t.clone();
                h.add_edge(at as Vertex, k as Vertex).unwrap();
                h
            })
        }));
    }
    layer
}

/// The building blocks of the glued corpus, each with one attach vertex
/// per vertex orbit.
fn corpus_blocks() -> Vec<(Graph, Vec<Vertex>)> {
    vec![
        (named::complete(2), vec![0]),
        (named::cycle(3), vec![0]),
        (named::cycle(4), vec![0]),
        (named::complete(4), vec![0]),
        (named::complete_bipartite(2, 3), vec![0, 2]),
    ]
}

/// Connected graphs built by gluing blocks from `{K2, C3, C4, K4, K2,3}`
/// at single vertices, with at most `max_vertices` vertices and
/// `max_cutvertices` cutvertices.
pub fn glued_block_graphs(max_vertices: usize, max_cutvertices: usize) -> Vec<Graph> {
    let blocks = corpus_blocks();
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut frontier: Vec<Graph> = Vec::new();
    for (b, _) in &blocks {
        if b.vertex_count() <= max_vertices && seen.insert(canonical_form(b)) {
            frontier.push(b.clone());
        }
    }
    let mut out = frontier.clone();
    while let Some(g) = frontier.pop() {
        for (b, attach) in &blocks {
            if g.vertex_count() + b.vertex_count() - 1 > max_vertices {
                continue;
            }
            for &a in attach {
                for at in g.vertices() {
                    let mut h = g.clone();
                    let mut next = h.max_vertex().unwrap() + 1;
                    let map: BTreeMap<Vertex, Vertex> = b
                        .vertices()
                        .map(|v| {
                            if v == a {
                                (v, at)
                            } else {
                                next += 1;
                                (v, next - 1)
                            }
                        })
                        .collect();
                    for e in b.edges() {
                        h.add_edge(map[&e.0], map[&e.1]).unwrap();
                    }
                    let cuts = decompose(&h).map(|d| d.cutvertices.len()).unwrap_or(usize::MAX);
                    if cuts <= max_cutvertices && seen.insert(canonical_form(&h)) {
                        frontier.push(h.clone());
                        out.push(h);
                    }
                }
            }
        }
    }
    dedupe(out)
}

/// The fixed corpus: every tree and every glued block graph with 3 to 8
/// vertices (at most three cutvertices for the glued ones), deduplicated.
pub fn corpus() -> Vec<Graph> {
    let mut gs: Vec<Graph> = (3..=8).flat_map(trees).collect();
    gs.extend(glued_block_graphs(8, 3).into_iter().filter(|g| g.vertex_count() >= 3));
    dedupe(gs)
}

pub fn caterpillars(n: usize) -> Vec<Graph> {
    trees(n).into_iter().filter(crate::caterpillar::is_caterpillar).collect()
}
