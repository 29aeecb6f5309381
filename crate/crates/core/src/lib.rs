//! Desk-scale laboratory for property testing of vertex-weighted graphs.

pub mod error;
pub mod gallery;
pub mod harness;
pub mod blowup;
pub mod distance;
pub mod property;
pub mod regularity;
pub mod sampling;
pub mod structure;
pub mod tester;
pub mod wgraph;

pub use error::{Error, Result};
pub use wgraph::{rat, Graph, Rational, VertexDistribution, VertexSet, WeightedGraph};
