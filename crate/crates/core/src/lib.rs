//! Hamiltonicity and hamiltonian connectedness of graph squares, decided
//! from the block-cutvertex structure, with witness construction,
//! counterexample families and an exhaustive search oracle.

pub mod bctree;
pub mod caterpillar;
pub mod construct;
pub mod counterexample;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod figures;
pub mod graph;
pub mod hamconn;
pub mod labelling;
pub mod oracle;

pub use bctree::{bc_isomorphic, bc_tree, BcNode, BcTree};
pub use caterpillar::{caterpillar_spine_edges, compute_p0, CaterpillarAnalysis, P0Component, SpineEdges};
pub use construct::{block_cycle, caterpillar_cycle, construct_ham_cycle, construct_ham_path, BlockCycle, CaterpillarCycle};
pub use counterexample::{gen_bn3, gen_hc_counterexample, substitute, Plug, SubstitutionRecipe};
pub use decomposition::{decompose, Block, BlockDecomposition, BlockId};
pub use error::{Error, Result};
pub use figures::{counterexample_for, Counterexample, Figure, Target};
pub use graph::{Edge, Graph, Vertex};
pub use hamconn::{algorithm2, check_pair_path, HcOutcome, HcVerdict};
pub use labelling::{algorithm1, check_conditions, HamOutcome, HamVerdict, Labelling, VerdictClass};
pub use oracle::{
    find_ham_cycle, find_ham_path, is_ham_connected, verify_property, EdgeConstrainedSearch, PropertyKind,
    SearchOutcome, Witness,
};
