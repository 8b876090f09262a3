//! Marked domination in subcubic graphs.
//!
//! The crate bundles an exact marked-domination solver, the vertex weight
//! potential `w`, a catalog of weight-certified reduction rules with a
//! fixpoint engine, the colored multigraph of degree-3 vertices, and the
//! scoring systems for alternating green-black paths and cycles.

pub mod discharge;
pub mod graph;
pub mod multigraph;
pub mod path_score;
pub mod rational;
pub mod reductions;
pub mod solver;
pub mod weights;

pub use graph::{MarkedGraph, VertexId};
pub use rational::Rational12;
