//! Signed multigraphs and their signed-circuit covers.
//!
//! The crate models signed multigraphs (loops and parallel edges allowed),
//! enumerates their circuits, barbells and signed circuits, decides
//! flow-admissibility, searches exactly for `k`-covers by signed circuits,
//! works with circuit decompositions of signed Eulerian graphs and
//! necklaces, and sweeps small graphs up to switching isomorphism to check
//! structural properties.

pub mod circuits;
pub mod cli;
pub mod cover;
pub mod decomposition;
pub mod edgeset;
pub mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod necklace;
pub mod signing;
pub mod survey;

#[cfg(test)]
pub(crate) mod fixtures;

pub use circuits::{Barbell, Circuit, SignedCircuit, SignedCircuitKind};
pub use cover::{CoverCertificate, CoverMember};
pub use decomposition::{CircuitDecomposition, IntersectionGraph};
pub use edgeset::{EdgeId, EdgeSet};
pub use error::{Error, Result};
pub use graph::{Edge, Sign, SignedGraph, Subgraph, VertexId};
pub use necklace::NecklaceStructure;
pub use signing::SwitchSet;
