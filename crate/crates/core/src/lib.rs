//! Exact 3-vertex-path (Λ) packing in cubic graphs: solvers, the graph
//! constructions that transport Λ-factor properties between graphs, and
//! checkers for the structural statements about them.

pub mod claims;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod packing;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
