//! Lattice-based distinguishers for gap set cover and gap hypergraph vertex
//! cover in the restricted parameter range, with exact integer linear
//! algebra, exhaustive oracles and seeded promise-instance generators.

pub(crate) mod bigint_serde;
pub mod distinguisher;
pub mod instances;
pub mod lemmas;
pub mod linalg;
pub mod oracle;

pub use distinguisher::{
    distinguish_hypergraph_vc, distinguish_set_cover, distinguish_zero_kernel, DistinguishError,
    Threshold,
};
pub use instances::{
    Answer, DecisionStep, Eta, GapParams, HypergraphInstance, InstanceFile, SetCoverInstance,
    Verdict, Witness,
};
