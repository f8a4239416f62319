//! Short-cycle scrubbing for bounded-degree graphs.
//!
//! The pipeline takes a graph of maximum degree about `sqrt(n)` and produces
//! two things: a set `E'` of edges, each certified to lie in a triangle of
//! the input, and a family of small tripartite slices that together preserve
//! every remaining triangle while containing few short cycles — or, in the
//! strict mode, no 4-cycles at all. Around the pipeline sit the gadget
//! reductions that translate triangles into longer cycles or weighted
//! instances into unweighted ones, a replay harness for distance-oracle and
//! dynamic-update workloads, and brute-force oracles that verify every
//! guarantee exactly at desk scale.
//!
//! Jump in via the runnable examples: `cargo run --example remove_most_cycles`.

pub mod bench;
pub mod cli;
pub mod dense;
pub mod fourfree;
pub mod gen;
pub mod graph;
pub mod harness;
pub mod io;
pub mod manifest;
pub mod matrix;
pub mod oracle;
pub mod reductions;
pub mod slicing;

pub use graph::{Graph, Part, TripartiteGraph, WeightedTripartiteGraph};
