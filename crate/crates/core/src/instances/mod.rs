//! Set-cover and hypergraph instances, promise parameters, verdicts, the
//! JSON file format and seeded generators of promise instances.

pub mod generate;
mod io;
mod model;
mod params;
mod verdict;

use thiserror::Error;

pub use io::{parse_instance, serialize_instance, InstanceFile, ParseError};
pub use model::{
    append_ones_column, build_hypergraph_incidence, build_set_cover_incidence,
    HypergraphInstance, SetCoverInstance,
};
pub use params::{Eta, GapParams};
pub use verdict::{Answer, DecisionStep, Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("ground set must have at least one element")]
    EmptyGroundSet,
    #[error("instance must contain at least one set or edge")]
    NoSets,
    #[error("set {index} is empty")]
    EmptySet { index: usize },
    #[error("set {index} contains {element}, outside [0, {bound})")]
    OutOfRange {
        index: usize,
        element: usize,
        bound: usize,
    },
    #[error("set {index} is not strictly increasing")]
    NotStrictlyIncreasing { index: usize },
    #[error("sets do not cover the ground set; uncovered elements: {elements:?}")]
    Uncovered { elements: Vec<usize> },
    #[error("edge {index} has {found} vertices, expected {expected}")]
    EdgeSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("uniformity k = {k} must be at least 2")]
    UniformityTooSmall { k: usize },
    #[error("eta = {num}/{den} must be a fraction greater than 1")]
    InvalidEta { num: u64, den: u64 },
    #[error("cannot parse eta from {0:?}; expected p/q or an integer")]
    EtaSyntax(String),
    #[error("cover-size bound d must be positive")]
    ZeroBound,
}
