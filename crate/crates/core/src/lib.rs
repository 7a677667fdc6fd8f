//! Finite groups, their cyclicizers, and the non-cyclic graph.
//!
//! Groups are built from a [`GroupSpec`] into a validated Cayley table
//! ([`Group`]). [`cyclic`] computes cyclicizers and maximal cyclic
//! subgroups, [`graph`] builds the non-cyclic graph and its invariants,
//! [`iso`] canonicalizes graphs, and [`harness`] runs the structural
//! theorems about these graphs as executable checks over a catalog.

pub mod bitset;
pub mod cyclic;
pub mod error;
pub mod graph;
pub mod group;
pub mod harness;
pub mod iso;
pub mod structure;

pub use error::{Error, Result};
pub use group::{build, Group, GroupSpec, Subgroup};
