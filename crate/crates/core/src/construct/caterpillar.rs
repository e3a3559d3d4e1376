use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::caterpillar::is_caterpillar;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarCycle {
    pub vertices: Vec<Vertex>,
    pub spine: Vec<Vertex>,
    /// `x1x2` and `x(m-1)xm`.
    pub end_edges: (Edge, Edge),
    /// For each internal spine vertex, a cycle edge joining two of its
    /// neighbours. All distinct, and distinct from the end edges.
    pub neighbor_pairs: Vec<(Vertex, Edge)>,
}

impl CaterpillarCycle {
    pub fn edges(&self) -> Vec<Edge> {
        cycle_edges(&self.vertices)
    }
}

pub(crate) fn cycle_edges(seq: &[Vertex]) -> Vec<Edge> {
    let n = seq.len();
    (0..n).map(|t| Edge::new(seq[t], seq[(t + 1) % n])).collect()
}

/// A hamiltonian cycle of `t²` through both end edges of `spine`, built by
/// running out along the spine and back. Even-indexed spine vertices are
/// visited on the way out and the leaves of odd-indexed ones; the return
/// lane takes the rest.
///
/// `spine` must be a path of `t` such that every other vertex is a leaf
/// hanging at an internal spine vertex. Any longest path qualifies.
pub fn caterpillar_cycle(t: &Graph, spine: &[Vertex]) -> Result<CaterpillarCycle> {
    let n = t.vertex_count();
    if n < 3 {
        return Err(Error::TooSmall { needed: 3, found: n });
    }
    if !t.is_connected() || t.edge_count() + 1 != n || !is_caterpillar(t) {
        return Err(Error::NotCaterpillar);
    }
    let m = spine.len();
    if m < 3 {
        return Err(Error::Precondition("spine needs at least three vertices".into()));
    }
    if spine.windows(2).any(|w| !t.has_edge(w[0], w[1])) {
        return Err(Error::Precondition("spine is not a path of the caterpillar".into()));
    }
    let on_spine: BTreeSet<Vertex> = spine.iter().copied().collect();
    if on_spine.len() != m {
        return Err(Error::Precondition("spine repeats a vertex".into()));
    }
    let x = |j: usize| spine[j - 1];

    // leaves(j) for 2 <= j <= m-1, with the spine ends counted as leaves
    let mut leaves: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for j in 2..m {
        let mut ls: Vec<Vertex> = t.neighbors(x(j)).filter(|v| !on_spine.contains(v)).collect();
        if ls.iter().any(|&l| t.degree(l) != 1) {
            return Err(Error::Precondition("spine leaves a non-leaf vertex off the path".into()));
        }
        if j == m - 1 {
            ls.insert(0, x(m));
        }
        if j == 2 {
            ls.push(x(1));
        }
        leaves.insert(j, ls);
    }
    let covered = m + leaves.values().map(|ls| ls.iter().filter(|v| !on_spine.contains(v)).count()).sum::<usize>();
    if covered != n {
        return Err(Error::Precondition("spine does not dominate the caterpillar".into()));
    }

    let mut forward = Vec::new();
    for j in 2..m {
        if j % 2 == 0 {
            forward.push(x(j));
        } else {
            let mut ls = leaves[&j].clone();
            if j == m - 1 {
                // xm closes the lane next to x(m-1) on the way back
                ls.retain(|&v| v != x(m));
                ls.push(x(m));
            }
            forward.extend(ls);
        }
    }
    let mut backward = Vec::new();
    for j in (2..m).rev() {
        if j % 2 == 1 {
            backward.push(x(j));
        } else {
            backward.extend(leaves[&j].iter().copied());
        }
    }
    let mut vertices = forward;
    vertices.extend(backward);

    let edges = cycle_edges(&vertices);
    let end_edges = (Edge::new(x(1), x(2)), Edge::new(x(m - 1), x(m)));
    let pairs = pick_neighbor_pairs(t, spine, &edges, end_edges)
        .ok_or_else(|| Error::Internal("no distinct neighbour-pair edges".into()))?;
    let cyc = CaterpillarCycle { vertices, spine: spine.to_vec(), end_edges, neighbor_pairs: pairs };
    check_caterpillar_cycle(t, &cyc).map_err(Error::Internal)?;
    Ok(cyc)
}

/// A distinct neighbour-pair edge for each internal spine vertex, by
/// augmenting paths.
fn pick_neighbor_pairs(t: &Graph, spine: &[Vertex], edges: &[Edge], ends: (Edge, Edge)) -> Option<Vec<(Vertex, Edge)>> {
    let internal = &spine[1..spine.len() - 1];
    let cands: Vec<Vec<Edge>> = internal
        .iter()
        .map(|&xj| {
            edges
                .iter()
                .copied()
                .filter(|&e| e != ends.0 && e != ends.1 && t.has_edge(e.0, xj) && t.has_edge(e.1, xj))
                .collect()
        })
        .collect();
    let mut owner: BTreeMap<Edge, usize> = BTreeMap::new();
    fn augment(j: usize, cands: &[Vec<Edge>], owner: &mut BTreeMap<Edge, usize>, seen: &mut BTreeSet<Edge>) -> bool {
        for &e in &cands[j] {
            if seen.insert(e) {
                let free = match owner.get(&e) {
                    None => true,
                    Some(&o) => augment(o, cands, owner, seen),
                };
                if free {
                    owner.insert(e, j);
                    return true;
                }
            }
        }
        false
    }
    for j in 0..internal.len() {
        if !augment(j, &cands, &mut owner, &mut BTreeSet::new()) {
            return None;
        }
    }
    let mut by_vertex: BTreeMap<usize, Edge> = BTreeMap::new();
    for (e, j) in owner {
        by_vertex.insert(j, e);
    }
    Some(by_vertex.into_iter().map(|(j, e)| (internal[j], e)).collect())
}

/// Independent check of everything the cycle promises.
pub fn check_caterpillar_cycle(t: &Graph, c: &CaterpillarCycle) -> Result<(), String> {
    let seq = &c.vertices;
    let set: BTreeSet<Vertex> = seq.iter().copied().collect();
    if set.len() != seq.len() || set != t.vertices().collect() {
        return Err("not a spanning cycle".into());
    }
    let sq = t.square();
    let edges: BTreeSet<Edge> = cycle_edges(seq).into_iter().collect();
    if let Some(e) = edges.iter().find(|e| !sq.has_edge(e.0, e.1)) {
        return Err(format!("{e} is not an edge of the square"));
    }
    for e in [c.end_edges.0, c.end_edges.1] {
        if !edges.contains(&e) {
            return Err(format!("end edge {e} missing"));
        }
    }
    let m = c.spine.len();
    let internal: BTreeSet<Vertex> = c.spine[1..m - 1].iter().copied().collect();
    let mut used: BTreeSet<Edge> = [c.end_edges.0, c.end_edges.1].into();
    let mut seen = BTreeSet::new();
    for &(xj, e) in &c.neighbor_pairs {
        if !internal.contains(&xj) || !seen.insert(xj) {
            return Err(format!("{xj} is not a fresh internal spine vertex"));
        }
        if !edges.contains(&e) || !t.has_edge(e.0, xj) || !t.has_edge(e.1, xj) || !used.insert(e) {
            return Err(format!("bad neighbour pair {e} for {xj}"));
        }
    }
    if seen.len() != internal.len() {
        return Err("an internal spine vertex lacks a neighbour pair".into());
    }
    Ok(())
}
