//! Decide, certify, and empirically verify topological properties of the
//! hyperspace of non-cut subcontinua of a finite graph.

mod dsu;
pub mod classify;
pub mod cut;
pub mod error;
pub mod graph;
pub mod hyperspace;
pub mod path;
pub mod region;
pub mod report;
pub mod subgraph;

pub use error::{Error, Result};
