//! Exact g-extra connectivity of strong products of paths and cycles.
//!
//! A g-extra cut of a connected graph is a vertex set whose removal
//! disconnects it and leaves every component with more than `g`
//! vertices; κ_g is the minimum size of one. This crate builds the
//! product graphs, computes κ_g exactly with two independent solvers,
//! evaluates the known closed forms, constructs the explicit witness
//! cuts, and reconciles all of them over parameter grids.

pub mod closed_form;
pub mod error;
pub mod extra_conn;
pub mod graph;
pub mod products;
pub mod verifier;
pub mod witnesses;

pub use error::{Error, Result};
pub use graph::{make_cycle, make_path, CutSet, Graph, VertexSet};
pub use products::{cartesian_product, strong_product, Axis, ProductGraph, ProductKind};
