use std::collections::{BTreeMap, BTreeSet};

use crate::decomposition::{decompose, Block};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::hamconn::{algorithm2, HcOutcome};
use crate::oracle::{find_ham_cycle, find_ham_path, EdgeConstrainedSearch, Witness, WitnessKind};

/// A hamiltonian `x`–`y` path of `g²`, by induction on the blocks of `g`.
/// Requires that `g` has no nontrivial bridge and no block with more than
/// two cutvertices.
pub fn construct_ham_path(g: &Graph, x: Vertex, y: Vertex) -> Result<Witness> {
    for v in [x, y] {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if x == y {
        return Err(Error::SameEndpoints(x));
    }
    let verdict = algorithm2(g)?;
    if verdict.outcome != HcOutcome::HamConnected {
        return Err(Error::Precondition("the block structure does not guarantee hamiltonian paths".into()));
    }
    let seq = path_between(g, x, y)?;
    validate_path(g, &seq, x, y).map_err(Error::Internal)?;
    Ok(Witness { kind: WitnessKind::Path, vertices: seq, designated: BTreeMap::new(), neighbor_pairs: BTreeMap::new() })
}

pub fn validate_path(g: &Graph, seq: &[Vertex], x: Vertex, y: Vertex) -> Result<(), String> {
    let set: BTreeSet<Vertex> = seq.iter().copied().collect();
    if set.len() != seq.len() || set != g.vertices().collect() {
        return Err("not a hamiltonian path".into());
    }
    if seq.first() != Some(&x) || seq.last() != Some(&y) {
        return Err(format!("path does not run from {x} to {y}"));
    }
    let sq = g.square();
    match seq.windows(2).find(|w| !sq.has_edge(w[0], w[1])) {
        Some(w) => Err(format!("{}-{} is not an edge of the square", w[0], w[1])),
        None => Ok(()),
    }
}

fn path_between(g: &Graph, x: Vertex, y: Vertex) -> Result<Vec<Vertex>> {
    let d = decompose(g)?;
    if d.blocks.len() == 1 {
        if g.vertex_count() == 2 {
            return Ok(vec![x, y]);
        }
        return oracle_path(g, x, y, &[], false).map(|w| w.vertices);
    }
    match (0..d.blocks.len()).find(|&b| d.blocks[b].contains(x) && d.blocks[b].contains(y)) {
        Some(b) => same_block(g, &d.blocks[b], &d.cutvertices_in(b), x, y),
        None => split_at_cutvertex(g, &d.cutvertices, x, y),
    }
}

/// `x` and `y` share no block: cut at the smallest separating cutvertex
/// and join an `x`–`c` path with a `c`–`y` path.
fn split_at_cutvertex(g: &Graph, cuts: &BTreeSet<Vertex>, x: Vertex, y: Vertex) -> Result<Vec<Vertex>> {
    for &c in cuts.iter().filter(|&&c| c != x && c != y) {
        let mut rest = g.clone();
        rest.remove_vertex(c);
        let k = rest.reachable_from(x);
        if k.contains(&y) {
            continue;
        }
        let mut gx_vs = k.clone();
        gx_vs.insert(c);
        let gy_vs: BTreeSet<Vertex> = g.vertices().filter(|v| !k.contains(v)).collect();
        let px = path_between(&g.induced_subgraph(&gx_vs), x, c)?;
        let py = path_between(&g.induced_subgraph(&gy_vs), c, y)?;
        return Ok(px.into_iter().chain(py.into_iter().skip(1)).collect());
    }
    Err(Error::Internal(format!("no cutvertex separates {x} and {y}")))
}

/// The component containing `c` once the block's edges are gone.
fn side(g: &Graph, block: &BTreeSet<Edge>, c: Vertex) -> Graph {
    let mut rest = g.clone();
    for e in block {
        rest.remove_edge(e.0, e.1);
    }
    let keep = rest.reachable_from(c);
    rest.induced_subgraph(&keep)
}

fn smallest_neighbor(h: &Graph, c: Vertex) -> Result<Vertex> {
    h.neighbors(c).next().ok_or_else(|| Error::Internal(format!("{c} is isolated")))
}

/// A `c`–`c'` path of the part of `g` hanging at `c` outside the block.
fn hanging_path(g: &Graph, block: &BTreeSet<Edge>, c: Vertex) -> Result<Vec<Vertex>> {
    let h = side(g, block, c);
    let c2 = smallest_neighbor(&h, c)?;
    path_between(&h, c, c2)
}

fn oracle_path(b: &Graph, x: Vertex, y: Vertex, ones: &[Vertex], pair_at_y: bool) -> Result<Witness> {
    let sq = b.square();
    let mut s = ones.iter().fold(EdgeConstrainedSearch::path(&sq, b, x, y), |s, &v| s.require_incidence(v, 1));
    if pair_at_y {
        s = s.require_neighbor_pair(y);
    }
    find_ham_path(&s)?
        .witness()
        .ok_or_else(|| Error::Internal(format!("no {x}-{y} path in a block square with demands at {ones:?}")))
}

fn designated_partner(w: &Witness, c: Vertex) -> Result<Vertex> {
    w.designated
        .get(&c)
        .and_then(|es| es.first())
        .map(|e| e.other(c))
        .ok_or_else(|| Error::Internal(format!("no designated edge at {c}")))
}

/// Replaces the path edge `c`–`z` by the detour `c … c'` then `c'`–`z`.
fn splice_into_path(p: &[Vertex], c: Vertex, z: Vertex, q: &[Vertex]) -> Result<Vec<Vertex>> {
    let at = p
        .windows(2)
        .position(|w| Edge::new(w[0], w[1]) == Edge::new(c, z))
        .ok_or_else(|| Error::Internal(format!("edge {c}-{z} not on the path")))?;
    let mut out = p[..=at].to_vec();
    if p[at] == c {
        out.extend(&q[1..]);
    } else {
        out.extend(q[1..].iter().rev());
    }
    out.extend(&p[at + 1..]);
    Ok(out)
}

/// Same as [`splice_into_path`] on a cyclic sequence.
fn splice_into_cycle(cyc: &[Vertex], c: Vertex, z: Vertex, q: &[Vertex]) -> Vec<Vertex> {
    let p = cyc.iter().position(|&v| v == c).unwrap();
    let mut seq: Vec<Vertex> = cyc[p..].iter().chain(&cyc[..p]).copied().collect();
    if seq[1] != z {
        seq[1..].reverse();
    }
    let mut out = vec![c];
    out.extend(&q[1..]);
    out.extend(&seq[1..]);
    out
}

fn same_block(g: &Graph, b: &Block, cs: &[Vertex], x: Vertex, y: Vertex) -> Result<Vec<Vertex>> {
    let bg = b.graph();
    match cs {
        [c] => {
            let c = *c;
            let (x, y, flip) = if x == c { (y, x, true) } else { (x, y, false) };
            let (pb, z) = if b.is_bridge() {
                (vec![x, y], x)
            } else {
                let w = oracle_path(&bg, x, y, &[c], false)?;
                let z = designated_partner(&w, c)?;
                (w.vertices, z)
            };
            let q = hanging_path(g, &b.edges, c)?;
            let mut p = splice_into_path(&pb, c, z, &q)?;
            if flip {
                p.reverse();
            }
            Ok(p)
        }
        [c1, c2] => {
            if b.is_bridge() {
                return Err(Error::Precondition(format!("nontrivial bridge {c1}-{c2}")));
            }
            let ends = [x, y];
            let (x, y, flip) = if cs.contains(&y) && !cs.contains(&x) { (y, x, true) } else { (x, y, false) };
            let (c1, c2) = if *c2 == x { (*c2, *c1) } else { (*c1, *c2) };
            let both_cut = cs.iter().all(|c| ends.contains(c));
            let (pb, rescue) = if !both_cut {
                (oracle_path(&bg, x, y, &[c1, c2], false)?, false)
            } else {
                let sq = bg.square();
                let s = EdgeConstrainedSearch::path(&sq, &bg, x, y).require_incidence(x, 1).require_incidence(y, 1);
                match find_ham_path(&s)?.witness() {
                    Some(w) => (w, false),
                    None => (oracle_path(&bg, x, y, &[x], true)?, true),
                }
            };
            let z1 = designated_partner(&pb, c1)?;
            let mut p = splice_into_path(&pb.vertices, c1, z1, &hanging_path(g, &b.edges, c1)?)?;
            if rescue {
                let Edge(u, v) = pb.neighbor_pairs[&c2];
                let chain = around_cutvertex(&side(g, &b.edges, c2), c2)?;
                let at = p
                    .windows(2)
                    .position(|w| Edge::new(w[0], w[1]) == Edge::new(u, v))
                    .ok_or_else(|| Error::Internal("neighbour pair edge lost".into()))?;
                p.splice(at + 1..at + 1, chain);
            } else {
                let z2 = designated_partner(&pb, c2)?;
                p = splice_into_path(&p, c2, z2, &hanging_path(g, &b.edges, c2)?)?;
            }
            if flip {
                p.reverse();
            }
            Ok(p)
        }
        _ => Err(Error::Precondition(format!("block with {} cutvertices", cs.len()))),
    }
}

/// All vertices of `h` except `c`, in an order that is a path of `h²`
/// whose two ends are neighbours of `c` in `h`. Closing it through `c`
/// gives a hamiltonian cycle of `h²` with both edges at `c` in `h`.
fn around_cutvertex(h: &Graph, c: Vertex) -> Result<Vec<Vertex>> {
    let d = decompose(h)?;
    let mut chain = Vec::new();
    for bi in d.two_blocks_containing(c) {
        let block = &d.blocks[bi];
        let bg = block.graph();
        let others: Vec<Vertex> = d.cutvertices_in(bi).into_iter().filter(|&v| v != c).collect();
        let sq = bg.square();
        let mut s = EdgeConstrainedSearch::cycle(&sq, &bg).require_incidence(c, 2);
        if let Some(&yi) = others.first() {
            s = s.require_incidence(yi, 1);
        }
        let w = find_ham_cycle(&s)?
            .witness()
            .ok_or_else(|| Error::Internal(format!("no block cycle through {c} with two block edges")))?;
        let mut cyc = w.vertices.clone();
        if let Some(&yi) = others.first() {
            let y2 = designated_partner(&w, yi)?;
            let q = hanging_path(h, &block.edges, yi)?;
            cyc = splice_into_cycle(&cyc, yi, y2, &q);
        }
        let p = cyc.iter().position(|&v| v == c).unwrap();
        chain.extend(cyc[p + 1..].iter().chain(&cyc[..p]));
    }
    chain.extend(h.neighbors(c).filter(|&v| h.degree(v) == 1));
    if chain.is_empty() {
        return Err(Error::Internal(format!("nothing hangs at {c}")));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn single_edge() {
        assert_eq!(construct_ham_path(&complete(2), 0, 1).unwrap().vertices, vec![0, 1]);
    }

    #[test]
    fn bowtie_across_the_cutvertex() {
        let w = construct_ham_path(&bowtie(), 1, 3).unwrap();
        assert_eq!((w.vertices[0], w.vertices[4]), (1, 3));
    }

    #[test]
    fn chain_of_three_blocks_between_the_cutvertices() {
        // triangles at 0 and 1 around an inner 4-cycle containing 0 and 1
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 0), (1, 6), (6, 7), (7, 1)]);
        for (x, y) in [(0, 1), (1, 0), (4, 6), (2, 3), (0, 6)] {
            construct_ham_path(&g, x, y).unwrap();
        }
    }

    #[test]
    fn rejects_bridges_and_bad_pairs() {
        assert!(matches!(construct_ham_path(&path(4), 0, 3), Err(Error::Precondition(_))));
        assert_eq!(construct_ham_path(&complete(3), 1, 1), Err(Error::SameEndpoints(1)));
        assert_eq!(construct_ham_path(&complete(3), 1, 7), Err(Error::UnknownVertex(7)));
    }
}
