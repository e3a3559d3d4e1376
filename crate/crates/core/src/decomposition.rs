//! Blocks, cutvertices and bridges, plus the per-cutvertex counters `bn`, `k`
//! and the per-block counter `cvn`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Index of a block inside [`BlockDecomposition::blocks`].
pub type BlockId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub vertices: BTreeSet<Vertex>,
    pub edges: BTreeSet<Edge>,
}

impl Block {
    /// A block with more than two vertices; every other block is a bridge.
    pub fn is_two_block(&self) -> bool {
        self.vertices.len() > 2
    }

    pub fn is_bridge(&self) -> bool {
        self.vertices.len() == 2
    }

    pub fn bridge_edge(&self) -> Option<Edge> {
        self.is_bridge().then(|| *self.edges.iter().next().unwrap())
    }

    pub fn graph(&self) -> Graph {
        Graph::edge_subgraph(&self.edges)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// Blocks ordered by their ascending vertex lists.
    pub blocks: Vec<Block>,
    pub cutvertices: BTreeSet<Vertex>,
    /// Vertices of degree one.
    pub leaves: BTreeSet<Vertex>,
    /// Bridges with no leaf endpoint.
    pub nontrivial_bridges: BTreeSet<Edge>,
    /// Number of incident nontrivial bridges, per cutvertex.
    pub bn: BTreeMap<Vertex, usize>,
    /// Number of 2-blocks containing the cutvertex.
    pub k: BTreeMap<Vertex, usize>,
    /// Number of cutvertices of the graph inside each block.
    pub cvn: Vec<usize>,
    /// Blocks containing each vertex, ascending.
    pub blocks_of: BTreeMap<Vertex, Vec<BlockId>>,
}

impl BlockDecomposition {
    pub fn two_blocks(&self) -> impl Iterator<Item = BlockId> + '_ {
        (0..self.blocks.len()).filter(|&b| self.blocks[b].is_two_block())
    }

    pub fn bridges(&self) -> impl Iterator<Item = (BlockId, Edge)> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.bridge_edge().map(|e| (i, e)))
    }

    pub fn trivial_bridges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.bridges()
            .map(|(_, e)| e)
            .filter(|e| !self.nontrivial_bridges.contains(e))
    }

    pub fn bn(&self, v: Vertex) -> usize {
        self.bn.get(&v).copied().unwrap_or(0)
    }

    pub fn k(&self, v: Vertex) -> usize {
        self.k.get(&v).copied().unwrap_or(0)
    }

    pub fn is_cutvertex(&self, v: Vertex) -> bool {
        self.cutvertices.contains(&v)
    }

    pub fn cutvertices_in(&self, b: BlockId) -> Vec<Vertex> {
        self.blocks[b]
            .vertices
            .iter()
            .copied()
            .filter(|v| self.cutvertices.contains(v))
            .collect()
    }

    pub fn two_blocks_containing(&self, v: Vertex) -> Vec<BlockId> {
        self.blocks_of
            .get(&v)
            .map(|bs| bs.iter().copied().filter(|&b| self.blocks[b].is_two_block()).collect())
            .unwrap_or_default()
    }

    /// Blocks that are leaves of the block-cutvertex tree. A graph with a
    /// single block has that block as its only endblock.
    pub fn endblocks(&self) -> Vec<BlockId> {
        (0..self.blocks.len()).filter(|&b| self.cvn[b] <= 1).collect()
    }

    pub fn is_endblock(&self, b: BlockId) -> bool {
        self.cvn[b] <= 1
    }
}

/// Splits a connected graph into its blocks.
pub fn decompose(g: &Graph) -> Result<BlockDecomposition> {
    if g.is_empty() {
        return Err(Error::TooSmall { needed: 1, found: 0 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }

    let mut blocks: Vec<Block> = biconnected_edge_sets(g)
        .into_iter()
        .map(|edges| {
            let vertices = edges.iter().flat_map(|e| [e.0, e.1]).collect();
            Block { vertices, edges }
        })
        .collect();
    blocks.sort_by(|a, b| a.vertices.iter().cmp(b.vertices.iter()));

    let mut blocks_of: BTreeMap<Vertex, Vec<BlockId>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            blocks_of.entry(v).or_default().push(i);
        }
    }
    let cutvertices: BTreeSet<Vertex> = blocks_of
        .iter()
        .filter(|(_, bs)| bs.len() > 1)
        .map(|(&v, _)| v)
        .collect();
    let leaves: BTreeSet<Vertex> = g.vertices().filter(|&v| g.degree(v) == 1).collect();

    let nontrivial_bridges: BTreeSet<Edge> = blocks
        .iter()
        .filter_map(Block::bridge_edge)
        .filter(|e| !leaves.contains(&e.0) && !leaves.contains(&e.1))
        .collect();

    let mut bn = BTreeMap::new();
    let mut k = BTreeMap::new();
    for &c in &cutvertices {
        bn.insert(c, nontrivial_bridges.iter().filter(|e| e.contains(c)).count());
        k.insert(
            c,
            blocks_of[&c].iter().filter(|&&b| blocks[b].is_two_block()).count(),
        );
    }
    let cvn = blocks
        .iter()
        .map(|b| b.vertices.iter().filter(|v| cutvertices.contains(v)).count())
        .collect();

    Ok(BlockDecomposition { blocks, cutvertices, leaves, nontrivial_bridges, bn, k, cvn, blocks_of })
}

/// Edge sets of the biconnected components (Hopcroft–Tarjan with an edge
/// stack, iterative so deep graphs do not exhaust the call stack).
fn biconnected_edge_sets(g: &Graph) -> Vec<BTreeSet<Edge>> {
    let ids: Vec<Vertex> = g.vertices().collect();
    let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = ids.iter().map(|&v| g.neighbors(v).map(|w| index[&w]).collect()).collect();
    let n = ids.len();

    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, next) = *top;
            if next < adj[v].len() {
                top.2 += 1;
                let w = adj[v][next];
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut comp = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.insert(Edge::new(ids[a], ids[b]));
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn bowtie_blocks() {
        let d = decompose(&bowtie()).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cutvertices, BTreeSet::from([0]));
        assert_eq!(d.k(0), 2);
        assert_eq!(d.bn(0), 0);
        assert!(d.blocks.iter().all(Block::is_two_block));
    }

    #[test]
    fn path_bridges() {
        let d = decompose(&path(4)).unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.cutvertices, BTreeSet::from([1, 2]));
        assert_eq!(d.nontrivial_bridges, BTreeSet::from([Edge(1, 2)]));
        assert_eq!(d.trivial_bridges().collect::<Vec<_>>(), vec![Edge(0, 1), Edge(2, 3)]);
        assert_eq!((d.bn(1), d.bn(2)), (1, 1));
        assert_eq!(d.cvn, vec![1, 2, 1]);
    }

    #[test]
    fn spider_bn_three() {
        let d = decompose(&spider(3, 2)).unwrap();
        assert_eq!(d.bn(0), 3);
    }

    #[test]
    fn single_vertex_and_single_block() {
        let d = decompose(&Graph::from_edges([])).err();
        assert_eq!(d, Some(Error::TooSmall { needed: 1, found: 0 }));
        let mut k1 = Graph::new();
        k1.add_vertex(4);
        assert!(decompose(&k1).unwrap().blocks.is_empty());
        let d = decompose(&complete(4)).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert!(d.cutvertices.is_empty());
        assert_eq!(d.endblocks(), vec![0]);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges([(0, 1), (2, 3)]);
        assert_eq!(decompose(&g), Err(Error::Disconnected));
    }

    #[test]
    fn cvn_sum_matches_block_memberships() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)]);
        let d = decompose(&g).unwrap();
        let lhs: usize = d.cvn.iter().sum();
        let rhs: usize = d.cutvertices.iter().map(|c| d.blocks_of[c].len()).sum();
        assert_eq!(lhs, rhs);
    }
}
