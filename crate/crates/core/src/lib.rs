//! Directed-graph invariants of finite multivariable dynamical systems
//! and edge-colored directed graph algebras.
//!
//! The crate builds the graph attached to an algebra presentation,
//! enumerates its topological edge partitions and their refinement
//! order, computes conflict colorings and the 1-colorability criterion,
//! canonicalizes graphs up to vertex relabeling and palette recoloring,
//! and decides when two presentations' invariants coincide.
//!
//! Everything is immutable after validation and every operation is a
//! pure function, so values can be shared freely across threads.

pub mod canon;
pub mod coloring;
pub mod dynamics;
pub mod graph;
mod hash;
mod parse;
pub mod partition;
pub mod paths;
pub mod report;

pub use parse::ParseError;
