//! Invariants of edge rings of small graphs: matching numbers, edge covers,
//! normality, edge polytope facets, Ehrhart data, and the regularity of
//! `K[G]` for normal edge rings and for principal toric ideals.

pub mod analysis;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod matching;
pub mod normality;
pub mod ehrhart;
pub mod enumerate;
pub mod toric;
pub mod polytope;

pub use error::{Error, Result};
pub use graph::{make_family, parse_graph, Bipartition, FamilySpec, Graph};
