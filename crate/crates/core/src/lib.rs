//! Expected and confidence propagation times for weighted zero forcing.
//!
//! Weighted zero forcing runs the standard color change rule on an
//! edge-weighted graph, but each permitted force `u -> v` succeeds only with
//! probability equal to the weight of `uv`. The crate computes exact
//! expected propagation times and alpha-confidence propagation times through
//! the absorbing Markov chain on blue sets ([`markov`]), through
//! family-specific formulas ([`closed`]), and estimates both by simulation
//! ([`montecarlo`]).

pub mod cli;
pub mod closed;
pub mod error;
pub mod graph;
pub mod markov;
pub mod montecarlo;
pub mod report;
pub mod zf;

pub use error::{Error, Result};
pub use graph::{make_family, parse_graph, serialize_graph, Family, VertexSet, WeightedGraph};
pub use report::{Method, PropagationReport, PropagationValue, Quantity};
