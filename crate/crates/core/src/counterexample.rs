//! Graph families with a prescribed block-cutvertex tree whose squares are
//! not hamiltonian (or not hamiltonian connected).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::decomposition::{decompose, BlockDecomposition, BlockId};
use crate::error::{Error, Result};
use crate::graph::{named, Edge, Graph, Vertex};
use crate::labelling::Labelling;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Replacement {
    /// `K_{2,k}` with the cutvertices on the `k` 2-valent vertices.
    CompleteBipartite(usize),
    /// `C_k` through the cutvertices in ascending order, padded with fresh
    /// vertices when `k` exceeds their number.
    Cycle(usize),
    /// `K_{2,3}` where the two cutvertices are 2-valent vertices.
    K23TwoMarked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    pub block: BlockId,
    pub replacement: Replacement,
    /// The cutvertices of the block, ascending.
    pub attachments: Vec<Vertex>,
}

/// Block exchanges to apply together. An empty recipe means the graph
/// itself already witnesses the failure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionRecipe {
    pub exchanges: Vec<Exchange>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cond5Case {
    /// At least five cutvertices in one 2-block.
    ManyCutvertices,
    /// Three or four cutvertices, one of them with two nontrivial bridges.
    SaturatedWithOthers,
    /// Two cutvertices, both with two nontrivial bridges.
    TwoSaturated,
}

pub fn recipe_for_cond5(d: &BlockDecomposition, b: BlockId, case: Cond5Case) -> Result<SubstitutionRecipe> {
    let cs = d.cutvertices_in(b);
    let replacement = match case {
        Cond5Case::ManyCutvertices => Replacement::CompleteBipartite(cs.len()),
        Cond5Case::SaturatedWithOthers => Replacement::Cycle(cs.len()),
        Cond5Case::TwoSaturated => Replacement::K23TwoMarked,
    };
    let ex = Exchange { block: b, replacement, attachments: cs };
    check_exchange(d, &ex)?;
    Ok(SubstitutionRecipe { exchanges: vec![ex] })
}

/// Every 2-block at `i` labelled 1 becomes a triangle (two cutvertices) or
/// a cycle through its cutvertices.
pub fn recipe_for_cond6(d: &BlockDecomposition, l: &Labelling, i: Vertex) -> Result<SubstitutionRecipe> {
    let exchanges: Vec<Exchange> = d
        .two_blocks_containing(i)
        .into_iter()
        .filter(|&b| l.get(i, b) == 1)
        .map(|b| {
            let cs = d.cutvertices_in(b);
            Exchange { block: b, replacement: Replacement::Cycle(cs.len().max(3)), attachments: cs }
        })
        .collect();
    if exchanges.is_empty() {
        return Err(Error::RecipeMismatch(format!("no 2-block at {i} is labelled 1")));
    }
    Ok(SubstitutionRecipe { exchanges })
}

/// A 2-block with `r > 2` cutvertices becomes `C_r`.
pub fn recipe_for_hc(d: &BlockDecomposition, b: BlockId) -> Result<SubstitutionRecipe> {
    let cs = d.cutvertices_in(b);
    if cs.len() < 3 {
        return Err(Error::RecipeMismatch(format!("block {b} has only {} cutvertices", cs.len())));
    }
    let ex = Exchange { block: b, replacement: Replacement::Cycle(cs.len()), attachments: cs };
    Ok(SubstitutionRecipe { exchanges: vec![ex] })
}

fn check_exchange(d: &BlockDecomposition, ex: &Exchange) -> Result<()> {
    let block = d
        .blocks
        .get(ex.block)
        .ok_or_else(|| Error::RecipeMismatch(format!("no block {}", ex.block)))?;
    if !block.is_two_block() {
        return Err(Error::RecipeMismatch(format!("block {} is a bridge", ex.block)));
    }
    if ex.attachments != d.cutvertices_in(ex.block) {
        return Err(Error::RecipeMismatch(format!(
            "attachments {:?} differ from the cutvertices of block {}",
            ex.attachments, ex.block
        )));
    }
    let k = ex.attachments.len();
    let ok = match ex.replacement {
        Replacement::CompleteBipartite(n) => n == k && k >= 2,
        Replacement::Cycle(n) => n >= 3 && n >= k,
        Replacement::K23TwoMarked => k == 2,
    };
    if !ok {
        return Err(Error::RecipeMismatch(format!(
            "{:?} cannot carry {k} cutvertices",
            ex.replacement
        )));
    }
    Ok(())
}

/// Replaces each listed block, keeping its cutvertices and giving new
/// vertices identifiers above the current maximum.
pub fn substitute(g: &Graph, r: &SubstitutionRecipe) -> Result<Graph> {
    let d = decompose(g)?;
    let mut out = g.clone();
    let mut next = g.max_vertex().map_or(0, |m| m + 1);
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut seen = BTreeSet::new();
    for ex in &r.exchanges {
        check_exchange(&d, ex)?;
        if !seen.insert(ex.block) {
            return Err(Error::RecipeMismatch(format!("block {} exchanged twice", ex.block)));
        }
        let block = &d.blocks[ex.block];
        for e in &block.edges {
            out.remove_edge(e.0, e.1);
        }
        for &v in block.vertices.iter().filter(|v| !d.is_cutvertex(**v)) {
            out.remove_vertex(v);
        }
        let cs = &ex.attachments;
        let new_edges: Vec<(Vertex, Vertex)> = match ex.replacement {
            Replacement::CompleteBipartite(_) => {
                let (h1, h2) = (fresh(), fresh());
                cs.iter().flat_map(|&c| [(c, h1), (c, h2)]).collect()
            }
            Replacement::Cycle(n) => {
                let mut ring = cs.clone();
                while ring.len() < n {
                    ring.push(fresh());
                }
                (0..n).map(|t| (ring[t], ring[(t + 1) % n])).collect()
            }
            Replacement::K23TwoMarked => {
                let (w, h1, h2) = (fresh(), fresh(), fresh());
                [cs[0], cs[1], w].iter().flat_map(|&c| [(c, h1), (c, h2)]).collect()
            }
        };
        for (a, b) in new_edges {
            out.add_edge(a, b)?;
        }
    }
    Ok(out)
}

/// A connected graph hung at one of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plug {
    pub graph: Graph,
    pub attach: Vertex,
}

impl Plug {
    /// `K_2` attached at one end: the smallest plug with an edge.
    pub fn k2() -> Self {
        Plug { graph: named::complete(2), attach: 0 }
    }

    fn check(&self, need_edge: bool) -> Result<()> {
        if !self.graph.contains_vertex(self.attach) {
            return Err(Error::UnknownVertex(self.attach));
        }
        if !self.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        if need_edge && self.graph.edge_count() == 0 {
            return Err(Error::Precondition("plug needs at least one edge".into()));
        }
        Ok(())
    }
}

/// Glues a copy of the plug onto `g`, identifying its attach vertex with
/// `at`. Other plug vertices get fresh identifiers.
pub fn hang(g: &mut Graph, at: Vertex, plug: &Plug) -> Result<()> {
    plug.check(false)?;
    let mut next = g.max_vertex().map_or(0, |m| m + 1);
    let map: BTreeMap<Vertex, Vertex> = plug
        .graph
        .vertices()
        .map(|v| {
            if v == plug.attach {
                (v, at)
            } else {
                next += 1;
                (v, next - 1)
            }
        })
        .collect();
    g.add_vertex(at);
    for Edge(a, b) in plug.graph.edges() {
        g.add_edge(map[&a], map[&b])?;
    }
    Ok(())
}

/// Hangs the plug behind a new bridge `at`–`a`, so the bridge is nontrivial.
pub fn hang_behind_bridge(g: &mut Graph, at: Vertex, plug: &Plug) -> Result<()> {
    plug.check(true)?;
    let a = g.max_vertex().map_or(0, |m| m + 1);
    g.add_edge(at, a)?;
    hang(g, a, plug)
}

/// Cutvertex `0` with `h1` hanging at it and three nontrivial bridges
/// leading into `h2`, `h3`, `h4`.
pub fn gen_bn3(h1: &Plug, h2: &Plug, h3: &Plug, h4: &Plug) -> Result<Graph> {
    let mut g = Graph::new();
    g.add_vertex(0);
    for h in [h2, h3, h4] {
        hang_behind_bridge(&mut g, 0, h)?;
    }
    hang(&mut g, 0, h1)?;
    Ok(g)
}

/// `C_r` on `0..r` with the `t`-th plug hanging at vertex `t`.
pub fn gen_hc_counterexample(r: usize, plugs: &[Plug]) -> Result<Graph> {
    if r < 3 {
        return Err(Error::TooSmall { needed: 3, found: r });
    }
    if plugs.len() != r {
        return Err(Error::Precondition(format!("{r} plugs needed, {} given", plugs.len())));
    }
    let mut g = named::cycle(r as Vertex);
    for (t, p) in plugs.iter().enumerate() {
        p.check(true)?;
        hang(&mut g, t as Vertex, p)?;
    }
    Ok(g)
}
