//! Kernelization workbench for bidimensional graph problems: tree
//! decompositions, balanced separations, treewidth modulators, protrusion
//! decompositions and finite-integer-index protrusion replacement, with
//! brute-force oracles to certify every step on small instances.

pub mod budget;
pub mod error;
pub mod fii;
pub mod graph;
pub mod harness;
pub mod modulator;
pub mod par;
pub mod protrusion;
pub mod problems;
pub mod separation;
pub mod td;

pub use error::{Error, Result};
pub use graph::{BoundariedGraph, Graph, Separation};
pub use problems::Problem;
pub use td::TreeDecomposition;
