//! Hamiltonian connectedness of the square from the block structure.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::counterexample::{recipe_for_hc, SubstitutionRecipe};
use crate::decomposition::{decompose, BlockId};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::oracle::{ham_path, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HcOutcome {
    HamConnected,
    /// The square has no hamiltonian path between the ends of this bridge.
    NotHamConnected { bridge: Edge },
    /// A block with more than two cutvertices. The recipe builds a graph
    /// with an isomorphic block-cutvertex tree that is not hamiltonian
    /// connected.
    StructurallyRisky { block: BlockId, cvn: usize, recipe: SubstitutionRecipe },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcVerdict {
    pub outcome: HcOutcome,
    /// Blocks in the order they were peeled, endblocks of the whole graph first.
    pub peel_trace: Vec<BlockId>,
}

impl HcVerdict {
    pub fn summary(&self) -> String {
        match &self.outcome {
            HcOutcome::HamConnected => "square is hamiltonian connected".into(),
            HcOutcome::NotHamConnected { bridge } => {
                format!("square is not hamiltonian connected: nontrivial bridge {bridge}")
            }
            HcOutcome::StructurallyRisky { block, cvn, .. } => format!(
                "square may not be hamiltonian connected: block {block} holds {cvn} cutvertices; \
                 a graph with the same block-cutvertex tree is not hamiltonian connected"
            ),
        }
    }
}

/// Strips the endblocks, then peels endblocks of what is left. A peeled
/// bridge is decisive; a crowded 2-block is remembered and reported once
/// peeling ends without finding a bridge.
pub fn algorithm2(g: &Graph) -> Result<HcVerdict> {
    if g.vertex_count() < 2 {
        return Err(Error::TooSmall { needed: 2, found: g.vertex_count() });
    }
    let d = decompose(g)?;
    let mut trace: Vec<BlockId> = d.endblocks();
    let mut left: BTreeSet<BlockId> = (0..d.blocks.len()).filter(|&b| !d.is_endblock(b)).collect();
    let mut crowded: Option<BlockId> = None;

    while !left.is_empty() {
        // an endblock of what is left shares at most one cutvertex with it
        let b = left
            .iter()
            .copied()
            .find(|&b| {
                d.cutvertices_in(b)
                    .iter()
                    .filter(|c| d.blocks_of[c].iter().any(|o| *o != b && left.contains(o)))
                    .count()
                    <= 1
            })
            .ok_or_else(|| Error::Internal("remaining blocks have no endblock".into()))?;
        left.remove(&b);
        trace.push(b);
        if let Some(bridge) = d.blocks[b].bridge_edge() {
            return Ok(HcVerdict { outcome: HcOutcome::NotHamConnected { bridge }, peel_trace: trace });
        }
        if d.cvn[b] > 2 && crowded.is_none() {
            crowded = Some(b);
        }
    }
    let outcome = match crowded {
        None => HcOutcome::HamConnected,
        Some(b) => HcOutcome::StructurallyRisky { block: b, cvn: d.cvn[b], recipe: recipe_for_hc(&d, b)? },
    };
    Ok(HcVerdict { outcome, peel_trace: trace })
}

/// A hamiltonian `x`–`y` path of `g²`, searched exhaustively.
pub fn check_pair_path(g: &Graph, x: Vertex, y: Vertex) -> Result<Option<Witness>> {
    ham_path(&g.square(), x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn bowtie_connected() {
        let v = algorithm2(&bowtie()).unwrap();
        assert_eq!(v.outcome, HcOutcome::HamConnected);
        assert_eq!(v.peel_trace, vec![0, 1]);
    }

    #[test]
    fn path_has_bridge() {
        let v = algorithm2(&path(4)).unwrap();
        assert_eq!(v.outcome, HcOutcome::NotHamConnected { bridge: Edge(1, 2) });
    }

    #[test]
    fn triangle_with_pendants_is_risky() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]);
        let v = algorithm2(&g).unwrap();
        assert!(matches!(v.outcome, HcOutcome::StructurallyRisky { cvn: 3, .. }));
    }

    #[test]
    fn bridge_outranks_crowded_block() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5), (5, 6)]);
        let v = algorithm2(&g).unwrap();
        assert_eq!(v.outcome, HcOutcome::NotHamConnected { bridge: Edge(2, 5) });
        assert!(check_pair_path(&g, 2, 5).unwrap().is_none());
    }

    #[test]
    fn single_edge_and_small_inputs() {
        assert_eq!(algorithm2(&complete(2)).unwrap().outcome, HcOutcome::HamConnected);
        let mut k1 = Graph::new();
        k1.add_vertex(0);
        assert!(matches!(algorithm2(&k1), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn pair_paths() {
        assert_eq!(check_pair_path(&complete(2), 0, 1).unwrap().unwrap().vertices, vec![0, 1]);
        assert!(check_pair_path(&path(4), 0, 3).unwrap().is_some());
        assert!(check_pair_path(&path(4), 1, 2).unwrap().is_none());
        assert_eq!(check_pair_path(&path(4), 1, 1), Err(Error::SameEndpoints(1)));
    }
}
