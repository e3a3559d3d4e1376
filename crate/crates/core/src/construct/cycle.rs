use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::caterpillar::{caterpillar_cycle, cycle_edges};
use crate::caterpillar::{compute_p0, longest_path_in_tree};
use crate::decomposition::{decompose, BlockDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::labelling::{check_conditions_with, Labelling};
use crate::oracle::{find_ham_cycle, EdgeConstrainedSearch, Witness, WitnessKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCycle {
    pub vertices: Vec<Vertex>,
    /// The block edges of the cycle counted for each labelled cutvertex.
    pub designated: BTreeMap<Vertex, Vec<Edge>>,
}

/// A hamiltonian cycle of `b²` carrying `m[i]` distinct edges of `b` at
/// each listed vertex.
pub fn block_cycle(b: &Graph, m: &BTreeMap<Vertex, u8>) -> Result<BlockCycle> {
    let d = decompose(b)?;
    if b.vertex_count() < 3 || d.blocks.len() != 1 {
        return Err(Error::NotTwoBlock);
    }
    let sum: usize = m.values().map(|&v| v as usize).sum();
    let has_two = m.values().any(|&v| v == 2);
    if m.values().any(|&v| v > 2) || sum > 4 || (has_two && sum > 3) {
        return Err(Error::Precondition(format!("values {m:?} exceed what one block cycle carries")));
    }
    let sq = b.square();
    let search = m
        .iter()
        .fold(EdgeConstrainedSearch::cycle(&sq, b), |s, (&v, &r)| s.require_incidence(v, r as usize));
    let w = find_ham_cycle(&search)?
        .witness()
        .ok_or_else(|| Error::Internal(format!("no block cycle for {m:?}")))?;
    Ok(BlockCycle { vertices: w.vertices, designated: w.designated })
}

/// A hamiltonian cycle of `g²` assembled from block cycles, caterpillar
/// cycles and leaves, merged at one cutvertex at a time.
pub fn construct_ham_cycle(g: &Graph, l: &Labelling) -> Result<Witness> {
    if g.vertex_count() < 3 {
        return Err(Error::TooSmall { needed: 3, found: g.vertex_count() });
    }
    let d = decompose(g)?;
    let violated = check_conditions_with(&d, l)?;
    if !violated.is_empty() {
        return Err(Error::Precondition(format!("labelling violates conditions {violated:?}")));
    }
    let seq = if d.two_blocks().next().is_none() {
        caterpillar_cycle(g, &longest_path_in_tree(g))?.vertices
    } else if d.blocks.len() == 1 {
        let sq = g.square();
        find_ham_cycle(&EdgeConstrainedSearch::cycle(&sq, g))?
            .witness()
            .ok_or_else(|| Error::Internal("2-block square without hamiltonian cycle".into()))?
            .vertices
    } else {
        Merger::new(g, &d, l)?.run()?
    };
    let w = Witness { kind: WitnessKind::Cycle, vertices: seq, designated: BTreeMap::new(), neighbor_pairs: BTreeMap::new() };
    validate_cycle(g, &w.vertices).map_err(Error::Internal)?;
    Ok(w)
}

/// Spanning, simple, and every step an edge of `g²`.
pub fn validate_cycle(g: &Graph, seq: &[Vertex]) -> Result<(), String> {
    let set: BTreeSet<Vertex> = seq.iter().copied().collect();
    if seq.len() < 3 || set.len() != seq.len() || set != g.vertices().collect() {
        return Err("not a hamiltonian cycle".into());
    }
    let sq = g.square();
    match cycle_edges(seq).into_iter().find(|e| !sq.has_edge(e.0, e.1)) {
        Some(e) => Err(format!("{e} is not an edge of the square")),
        None => Ok(()),
    }
}

struct Merger<'a> {
    g: &'a Graph,
    d: &'a BlockDecomposition,
    /// Cyclic sequences; leaves start as singletons, nontrivial bridges
    /// between blocks as two-vertex cycles.
    pieces: Vec<Vec<Vertex>>,
    /// Edges each pending cutvertex relies on, kept intact until it is merged.
    designated: BTreeMap<Vertex, BTreeSet<Edge>>,
    /// The neighbour-pair edge reserved for cutvertices with two nontrivial bridges.
    pair: BTreeMap<Vertex, Edge>,
    pending: BTreeSet<Vertex>,
}

impl<'a> Merger<'a> {
    fn new(g: &'a Graph, d: &'a BlockDecomposition, l: &Labelling) -> Result<Self> {
        let pending: BTreeSet<Vertex> =
            d.cutvertices.iter().copied().filter(|&c| d.k(c) > 0).collect();
        let mut me = Merger { g, d, pieces: Vec::new(), designated: BTreeMap::new(), pair: BTreeMap::new(), pending };

        for b in d.two_blocks() {
            let m: BTreeMap<Vertex, u8> = d.cutvertices_in(b).into_iter().map(|c| (c, l.get(c, b))).collect();
            let bc = block_cycle(&d.blocks[b].graph(), &m)?;
            for (v, es) in bc.designated {
                me.designate(v, es);
            }
            me.pieces.push(bc.vertices);
        }

        let p0 = compute_p0(g, d)?;
        for comp in &p0.components {
            let is_leaf = |v: Vertex| g.degree(v) == 1;
            let core: Vec<Vertex> = comp.vertices.iter().copied().filter(|&v| !is_leaf(v)).collect();
            let leaves = comp.vertices.iter().copied().filter(|&v| is_leaf(v));
            match core.len() {
                0 => return Err(Error::Internal("P0 component made of leaves".into())),
                1 => me.pieces.extend(leaves.map(|v| vec![v])),
                2 if comp.vertices.len() == 2 => {
                    let e = Edge::new(core[0], core[1]);
                    me.designate(core[0], [e]);
                    me.designate(core[1], [e]);
                    me.pieces.push(core.clone());
                }
                _ => me.add_caterpillar(&comp.graph(), &core)?,
            }
        }
        Ok(me)
    }

    fn designate(&mut self, v: Vertex, es: impl IntoIterator<Item = Edge>) {
        if self.pending.contains(&v) {
            self.designated.entry(v).or_default().extend(es);
        }
    }

    /// `core` holds the non-leaf vertices of a caterpillar component; it
    /// is a path whose ends are cutvertices with one nontrivial bridge.
    fn add_caterpillar(&mut self, t: &Graph, core: &[Vertex]) -> Result<()> {
        let core_set: BTreeSet<Vertex> = core.iter().copied().collect();
        let inner = t.induced_subgraph(&core_set);
        let ends: Vec<Vertex> = inner.vertices().filter(|&v| inner.degree(v) <= 1).collect();
        if ends.len() != 2 || !inner.is_connected() {
            return Err(Error::Internal("P0 core is not a path".into()));
        }
        let mut order = vec![ends[0]];
        while order.len() < core.len() {
            let last = *order.last().unwrap();
            let next = inner
                .neighbors(last)
                .find(|v| !order.contains(v))
                .ok_or_else(|| Error::Internal("broken P0 core".into()))?;
            order.push(next);
        }
        let leaf_at = |v: Vertex| t.neighbors(v).find(|w| !core_set.contains(w));
        let mut spine = Vec::new();
        spine.extend(leaf_at(order[0]));
        spine.extend(order.iter().copied());
        spine.extend(leaf_at(*order.last().unwrap()));

        let cc = caterpillar_cycle(t, &spine)?;
        self.designate(order[0], [cc.end_edges.0]);
        self.designate(*order.last().unwrap(), [cc.end_edges.1]);
        for &(x, e) in &cc.neighbor_pairs {
            if core_set.contains(&x) && x != order[0] && x != *order.last().unwrap() {
                self.designate(x, [e]);
                self.pair.insert(x, e);
            }
        }
        self.pieces.push(cc.vertices);
        Ok(())
    }

    fn run(mut self) -> Result<Vec<Vertex>> {
        let order: Vec<Vertex> = self.pending.iter().copied().collect();
        for i in order {
            if self.d.bn(i) == 2 {
                self.merge_through_pair(i)?;
            } else {
                self.merge_at(i)?;
            }
            self.pending.remove(&i);
            self.designated.remove(&i);
            self.check_designations(i)?;
        }
        if self.pieces.len() != 1 {
            return Err(Error::Internal(format!("{} pieces left after merging", self.pieces.len())));
        }
        Ok(self.pieces.pop().unwrap())
    }

    /// Whether the edge `i`–`v` must survive because another pending
    /// cutvertex counts it.
    fn protected(&self, i: Vertex, v: Vertex) -> bool {
        let e = Edge::new(i, v);
        self.designated.iter().any(|(&j, es)| j != i && es.contains(&e))
    }

    fn anchored(&self, i: Vertex, end: Vertex) -> bool {
        !self.g.has_edge(i, end) || self.protected(i, end)
    }

    /// The cycle with `i` removed, read from the vertex after `i`.
    fn open_at(piece: &[Vertex], i: Vertex) -> Vec<Vertex> {
        let p = piece.iter().position(|&v| v == i).unwrap();
        piece[p + 1..].iter().chain(&piece[..p]).copied().collect()
    }

    fn take_pieces_with(&mut self, i: Vertex, also_leaves: bool) -> Vec<Vec<Vertex>> {
        let g = self.g;
        let (hit, keep): (Vec<_>, Vec<_>) = std::mem::take(&mut self.pieces).into_iter().partition(|p| {
            p.contains(&i) || (also_leaves && p.len() == 1 && g.degree(p[0]) == 1 && g.has_edge(p[0], i))
        });
        self.pieces = keep;
        hit
    }

    /// Removes `i` from every piece through it and threads the resulting
    /// paths, plus the leaves at `i`, into one cycle through `i`.
    fn merge_at(&mut self, i: Vertex) -> Result<()> {
        let hit = self.take_pieces_with(i, true);
        // cycles in piece order, leaves last
        let (mut paths, leaves): (Vec<_>, Vec<_>) = hit
            .into_iter()
            .map(|p| if p.contains(&i) { (Self::open_at(&p, i), false) } else { (p, true) })
            .partition(|(_, leaf)| !leaf);
        paths.extend(leaves);
        let mut paths: Vec<Vec<Vertex>> = paths.into_iter().map(|(p, _)| p).collect();

        let anchored_ends = |p: &[Vertex]| (self.anchored(i, p[0]), self.anchored(i, *p.last().unwrap()));
        let flags: Vec<(bool, bool)> = paths.iter().map(|p| anchored_ends(p)).collect();
        let count: usize = paths
            .iter()
            .zip(&flags)
            .map(|(p, &(a, b))| if p.len() == 1 { a as usize } else { a as usize + b as usize })
            .sum();
        let fail = |why: &str| Error::Internal(format!("merge at {i}: {why}"));
        if count > 2 {
            return Err(fail("more than two ends must stay next to the cutvertex"));
        }
        if paths.len() > 1 && paths.iter().zip(&flags).any(|(p, &(a, b))| p.len() > 1 && a && b) {
            return Err(fail("a piece must keep both ends next to the cutvertex"));
        }

        let anchored: Vec<usize> = (0..paths.len()).filter(|&t| flags[t].0 || flags[t].1).collect();
        let mut first = None;
        let mut last = None;
        if let Some(&t) = anchored.first() {
            if !flags[t].0 {
                paths[t].reverse();
            }
            first = Some(t);
        }
        if let Some(&t) = anchored.get(1) {
            if !flags[t].1 {
                paths[t].reverse();
            }
            last = Some(t);
        }
        let mut cycle = vec![i];
        if let Some(t) = first {
            cycle.extend(&paths[t]);
        }
        for (t, p) in paths.iter().enumerate() {
            if Some(t) != first && Some(t) != last {
                cycle.extend(p);
            }
        }
        if let Some(t) = last {
            cycle.extend(&paths[t]);
        }
        self.pieces.push(cycle);
        Ok(())
    }

    /// With two nontrivial bridges at `i`, `i` keeps its place on the
    /// caterpillar cycle and the opened block cycles go between the ends
    /// of its neighbour-pair edge.
    fn merge_through_pair(&mut self, i: Vertex) -> Result<()> {
        let fail = |why: &str| Error::Internal(format!("merge at {i}: {why}"));
        let Edge(u, v) = *self.pair.get(&i).ok_or_else(|| fail("no neighbour pair"))?;
        let hit = self.take_pieces_with(i, false);
        let holds_pair = |p: &Vec<Vertex>| cycle_edges(p).contains(&Edge::new(u, v));
        let main_at = hit.iter().position(holds_pair).ok_or_else(|| fail("pair edge lost"))?;
        let mut chain = Vec::new();
        for (t, p) in hit.iter().enumerate() {
            if t == main_at {
                continue;
            }
            let path = Self::open_at(p, i);
            if self.anchored(i, path[0]) || self.anchored(i, *path.last().unwrap()) {
                return Err(fail("an opened block cycle has a fixed end"));
            }
            chain.extend(path);
        }
        let main = &hit[main_at];
        let p = main.iter().position(|&w| w == u).unwrap();
        let mut seq: Vec<Vertex> = main[p..].iter().chain(&main[..p]).copied().collect();
        if seq[1] == v {
            seq[1..].reverse();
        }
        seq.extend(chain);
        self.pieces.push(seq);
        Ok(())
    }

    fn check_designations(&self, after: Vertex) -> Result<()> {
        let present: BTreeSet<Edge> = self
            .pieces
            .iter()
            .filter(|p| p.len() > 1)
            .flat_map(|p| cycle_edges(p))
            .collect();
        for (j, es) in &self.designated {
            if let Some(e) = es.iter().find(|e| !present.contains(e)) {
                return Err(Error::Internal(format!("merging {after} dropped edge {e} needed by {j}")));
            }
        }
        Ok(())
    }
}
