//! Spectral extremal checks for `H(4,3)`-free graphs of given size.
//!
//! `H(4,3)` is the graph formed by a 4-cycle and a triangle sharing one
//! vertex. The crate provides the graph families that are extremal for the
//! spectral radius among `H(4,3)`-free graphs with `m` edges, the exact
//! polynomial identities behind their spectral radii, numerical checks of the
//! eigenvector identities used in the extremal argument, and exhaustive and
//! battery-based scans that cross-check the bounds.

pub mod canon;
pub mod families;
pub mod forbidden;
pub mod graph;
pub mod io;
pub mod partitions;
pub mod poly;
pub mod report;
pub mod search;
pub mod spectral;

pub use canon::{canonical_form, CanonicalForm};
pub use graph::{Graph, GraphError, VertexSet};
pub use spectral::{SpectralConfig, SpectralResult};
