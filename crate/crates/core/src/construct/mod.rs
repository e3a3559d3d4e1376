//! Witness construction: caterpillar cycles, block cycles, and hamiltonian
//! cycles and paths of the whole square assembled from them.

mod caterpillar;
mod cycle;
mod path;

pub use caterpillar::{caterpillar_cycle, check_caterpillar_cycle, CaterpillarCycle};
pub use cycle::{block_cycle, construct_ham_cycle, validate_cycle, BlockCycle};
pub use path::{construct_ham_path, validate_path};
