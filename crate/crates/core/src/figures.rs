//! Smallest skeletons for each failure mode, and the counterexample
//! derived from an arbitrary input graph for a chosen condition.

use serde::{Deserialize, Serialize};

use crate::counterexample::{gen_bn3, hang, hang_behind_bridge, substitute, Plug, SubstitutionRecipe};
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::graph::{named, Graph, Vertex};
use crate::hamconn::{algorithm2, HcOutcome};
use crate::labelling::{algorithm1, HamOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// Some cutvertex with at least three nontrivial bridges.
    BridgeCount,
    /// A 2-block whose cutvertices cannot all be served.
    BlockSum,
    /// A cutvertex whose 2-blocks cannot carry enough cycle edges.
    VertexSum,
    HamConnected,
}

impl Target {
    pub fn condition(self) -> Option<u8> {
        match self {
            Target::BridgeCount => Some(4),
            Target::BlockSum => Some(5),
            Target::VertexSum => Some(6),
            Target::HamConnected => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub target: Target,
    pub recipe: SubstitutionRecipe,
    pub graph: Graph,
}

/// Applies the recipe the relevant algorithm attaches to `g`. Fails with
/// `RecipeMismatch` when `g` does not exhibit the requested failure.
pub fn counterexample_for(g: &Graph, target: Target) -> Result<Counterexample> {
    let recipe = match target {
        Target::BridgeCount => {
            let d = decompose(g)?;
            if !d.cutvertices.iter().any(|&c| d.bn(c) >= 3) {
                return Err(Error::RecipeMismatch("no cutvertex has three nontrivial bridges".into()));
            }
            SubstitutionRecipe::default()
        }
        Target::BlockSum | Target::VertexSum => {
            let v = algorithm1(g)?;
            match v.outcome {
                HamOutcome::StructurallyRisky { condition, recipe, .. } if Some(condition) == target.condition() => {
                    recipe
                }
                _ => return Err(Error::RecipeMismatch(format!("verdict: {}", v.summary()))),
            }
        }
        Target::HamConnected => {
            let v = algorithm2(g)?;
            match v.outcome {
                HcOutcome::StructurallyRisky { recipe, .. } => recipe,
                _ => return Err(Error::RecipeMismatch(format!("verdict: {}", v.summary()))),
            }
        }
    };
    let graph = substitute(g, &recipe)?;
    Ok(Counterexample { target, recipe, graph })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Figure {
    /// Three nontrivial bridges at one cutvertex.
    ThreeBridges,
    /// Five cutvertices in one 2-block.
    FiveCutvertices,
    /// Three cutvertices in one 2-block, one of them with two nontrivial bridges.
    ThreeWithSaturated,
    /// Two cutvertices in one 2-block, both with two nontrivial bridges.
    TwoSaturated,
    /// Two 2-blocks and a nontrivial bridge at one cutvertex.
    TwoBlocksAndBridge,
    /// Three 2-blocks at one cutvertex.
    ThreeBlocks,
    /// Three cutvertices in one 2-block, for hamiltonian connectedness.
    CrowdedBlock,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::ThreeBridges,
        Figure::FiveCutvertices,
        Figure::ThreeWithSaturated,
        Figure::TwoSaturated,
        Figure::TwoBlocksAndBridge,
        Figure::ThreeBlocks,
        Figure::CrowdedBlock,
    ];

    pub fn target(self) -> Target {
        match self {
            Figure::ThreeBridges => Target::BridgeCount,
            Figure::FiveCutvertices | Figure::ThreeWithSaturated | Figure::TwoSaturated => Target::BlockSum,
            Figure::TwoBlocksAndBridge | Figure::ThreeBlocks => Target::VertexSum,
            Figure::CrowdedBlock => Target::HamConnected,
        }
    }

    /// The skeleton with every plug a single edge.
    pub fn skeleton(self) -> Graph {
        let k2 = Plug::k2();
        let pendant = |g: &mut Graph, v: Vertex| hang(g, v, &k2).expect("fresh plug");
        let leg = |g: &mut Graph, v: Vertex| hang_behind_bridge(g, v, &k2).expect("fresh plug");
        // K4 on the given vertices
        let k4 = |g: &mut Graph, vs: [Vertex; 4]| {
            for a in 0..4 {
                for b in a + 1..4 {
                    g.add_edge(vs[a], vs[b]).expect("distinct vertices");
                }
            }
        };
        match self {
            Figure::ThreeBridges => gen_bn3(&k2, &k2, &k2, &k2).expect("fixed plugs"),
            Figure::FiveCutvertices => {
                let mut g = named::cycle(5);
                (0..5).for_each(|v| pendant(&mut g, v));
                g
            }
            Figure::ThreeWithSaturated => {
                let mut g = named::complete(4);
                leg(&mut g, 0);
                leg(&mut g, 0);
                pendant(&mut g, 1);
                pendant(&mut g, 2);
                g
            }
            Figure::TwoSaturated => {
                let mut g = named::cycle(4);
                for v in [0, 1] {
                    leg(&mut g, v);
                    leg(&mut g, v);
                }
                g
            }
            Figure::TwoBlocksAndBridge => {
                let mut g = Graph::new();
                k4(&mut g, [0, 1, 2, 3]);
                k4(&mut g, [0, 4, 5, 6]);
                leg(&mut g, 0);
                leg(&mut g, 1);
                leg(&mut g, 1);
                pendant(&mut g, 4);
                pendant(&mut g, 5);
                g
            }
            Figure::ThreeBlocks => {
                let mut g = Graph::new();
                k4(&mut g, [0, 1, 2, 3]);
                k4(&mut g, [0, 4, 5, 6]);
                k4(&mut g, [0, 7, 8, 9]);
                leg(&mut g, 1);
                leg(&mut g, 1);
                (4..10).filter(|&v| v != 6).for_each(|v| pendant(&mut g, v));
                g
            }
            Figure::CrowdedBlock => {
                let mut g = named::complete(4);
                (0..3).for_each(|v| pendant(&mut g, v));
                g
            }
        }
    }

    pub fn counterexample(self) -> Result<Counterexample> {
        counterexample_for(&self.skeleton(), self.target())
    }
}
