//! Digital topology on graphs.
//!
//! A digital space is modeled as a finite simple undirected graph. This
//! crate decides graph contractibility (with memoization and replayable
//! certificates), detects simple points, edges, and sets, applies the
//! topology-preserving transformations built from them, thins graphs to
//! skeletons, computes clique-complex invariants (Euler characteristic
//! and GF(2) Betti numbers), and voxelizes implicit circles and spheres
//! into cubical models whose intersection graphs feed the same pipeline.

pub mod census;
pub mod contract;
pub mod cubical;
mod dense;
pub mod graph;
pub mod invariants;
pub mod thinning;
pub mod transform;

pub use contract::{
    Contractibility, ContractionCertificate, Oracle, OracleBudget, Ternary,
};
pub use graph::{CanonicalKey, Graph, GraphError, VertexLabel};
