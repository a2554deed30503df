//! Finite soft set theory and soft topological spaces.
//!
//! A soft set over a universe `U` and parameter set `E` attaches one subset
//! of `U` to every parameter. This crate represents soft sets as packed
//! membership matrices over shared [`Context`]s and builds the full desk-
//! scale theory on top: the soft-set lattice algebra, soft topologies with
//! generation from subbases, soft mappings with continuity and embedding
//! checks, finite products with initial topologies, and the separation
//! predicates feeding the embedding-lemma instance checker.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line live in the companion `softtop` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod bits;
pub mod budget;
pub mod context;
pub mod error;
pub mod mapping;
pub mod point;
pub mod product;
pub mod separation;
pub mod set;
pub mod topology;

pub use budget::Budget;
pub use context::Context;
pub use error::{Error, Result};
pub use mapping::{compose, SoftMapping};
pub use point::{enumerate_soft_points, SoftPoint};
pub use product::{
    diagonal_mapping, initial_topology, product_context, product_topology, ProductContext,
};
pub use separation::{
    check_embedding_lemma, random_instance, separates_points, separates_points_from_closed,
    RandomInstance, SeparationReport,
};
pub use set::{all_soft_sets, soft_intersection, soft_union, SoftSet};
pub use topology::{generate_from_subbase, is_topology, SoftTopology, TopologyOrder};
