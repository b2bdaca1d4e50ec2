//! Exact engine for H-colourings of finite loopless multigraphs.
//!
//! An H-colouring of G is a proper edge-colouring `f: E(G) -> E(H)` such that
//! every vertex `u` of G has a vertex `v` of H with `f(∂u) = ∂v`. The crate
//! decides and enumerates H-colourings for a fixed host ([`solver`]),
//! enumerates every realizable splitted image of a guest up to isomorphism
//! ([`images`]), and bundles reproducible verification recipes ([`verify`]).

pub mod colouring;
pub mod error;
pub mod graph;
pub mod images;
pub mod named;
pub mod solver;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{CanonicalForm, EdgeId, EdgeSet, Multigraph, VertexId};
