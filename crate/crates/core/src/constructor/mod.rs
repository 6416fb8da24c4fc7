//! Witness graphs for realizable sextuples.

pub mod arrangement;
pub mod blocks;
pub mod family;
pub mod recipe;
pub mod surface;

use thiserror::Error;

use crate::combmap::MapError;
use crate::exploration::ExplorationError;

pub use arrangement::{AxisArrangement, AxisCircle, BuiltArrangement};
pub use blocks::{connector, gamma, leg, pillowcase, web, BlockParams, LabeledBlock, Pillowcase};
pub use family::{family_graph, FamilyCircles, FamilyGraph, FamilySpec, Rim};
pub use recipe::{construct, construct_with, search, search_with, Case, Construction, Route};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("NegativeParameter: {0}")]
    NegativeParameter(String),
    #[error("InvariantViolated: {0}")]
    InvariantViolated(String),
    #[error("OverlappingCrossings: all three families overlap pairwise")]
    OverlappingCrossings,
    #[error("NotRealizable: {0}")]
    NotRealizable(String),
    #[error("ConstructionFailed: {0}")]
    ConstructionFailed(String),
    #[error("SearchExhausted: no pillowcase or family layout reproduces {0}")]
    SearchExhausted(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Exploration(#[from] ExplorationError),
}
