use serde::{Deserialize, Serialize};

use bcsquare::{BlockDecomposition, Graph, HamVerdict, HcVerdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Positive,
    Negative,
    Risky,
    /// The oracle ran out of budget before deciding.
    Undetermined,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
            Verdict::Risky | Verdict::Undetermined => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub vertices: usize,
    pub edges: usize,
    pub blocks: usize,
    pub cutvertices: usize,
}

impl InputSummary {
    pub fn of(g: &Graph, d: &BlockDecomposition) -> Self {
        InputSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            blocks: d.blocks.len(),
            cutvertices: d.cutvertices.len(),
        }
    }
}

/// Canonical block-cutvertex trees of the input and of the generated graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub original: String,
    pub counterexample: String,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub input: InputSummary,
    pub verdict: Verdict,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ham: Option<HamVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hc: Option<HcVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<BlockDecomposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<Graph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub elapsed_ms: f64,
}
