//! Exact solvers for two digraph complexity measures, the rank and the
//! entanglement, through the pursuit games that characterize them, together
//! with a translation of rank-game strategies into entanglement-game
//! strategies and a front end for μ-terms.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod comeback;
pub mod digraph;
pub mod entanglement;
pub mod game;
pub mod muterm;
pub mod rank;
pub mod scc;
pub mod translate;
pub mod vertex_set;

pub use digraph::{families, Digraph, GraphError};
pub use game::{GameKind, Player, StrategyCertificate};
pub use muterm::MuTerm;
pub use scc::{scc_decompose, ComponentId, SccDecomposition};
pub use vertex_set::{Vertex, VertexSet, MAX_VERTICES};
