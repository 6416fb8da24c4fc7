//! Laminations of thrice-punctured spheres carried by graphs on the sphere.
//!
//! A graph embedded in the sphere with three marked faces is a Σ-graph. Its
//! sextuple `σ = (M_1, M_2, M_3, d_1, d_2, d_3)` counts disjoint special loops
//! around each marked face and measures distances between the marked faces;
//! the lamination types it carries are the lattice points of a polytope
//! determined by `σ`.

pub mod combmap;
pub mod constructor;
pub mod corpus;
pub mod exec;
pub mod exploration;
pub mod hole;
pub mod io;
pub mod oracle;
pub mod polytope;
pub mod render;
pub mod special_loops;
pub mod sweep;

pub use combmap::{CombinatorialMap, Dart, EdgeId, FaceId, MapError, VertexId};
pub use exec::Execution;
pub use exploration::{make_sigma_graph, ExplorationError, LoopType, SigmaGraph, SimpleLoop};
pub use hole::Hole;
