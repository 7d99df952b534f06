//! Exact contraction of Boolean-domain tensor networks.
//!
//! Networks are planarized (crossings replaced by a nine-vertex gadget,
//! high-degree symmetric vertices replaced by degree-5 gadgets) and then
//! contracted along recursive planar separators, so intermediate tensors
//! have rank `O(sqrt(N))`. A DIMACS frontend counts CNF models this way.

pub mod bench;
pub mod cli;
pub mod cnf;
pub mod engine;
pub mod error;
pub mod format;
pub mod gadget;
pub mod network;
pub mod planar;
pub mod tensor;

pub use engine::{
    build_plan_greedy, build_plan_separator, contract_full, execute_plan, planar_separator,
    ContractionPlan, ContractionStats, SeparatorResult, Strategy,
};
pub use error::{Error, Result};
pub use gadget::{verify_gadget, Gadget};
pub use network::{Endpoint, NetworkBuilder, TensorNetwork, Vertex};
pub use planar::{check_planarity, circular_drawing, reduce_degree, replace_crossings, Drawing, PlanarEmbedding, Planarity, Variant};
pub use tensor::{Count, Tensor};
