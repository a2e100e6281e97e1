//! Girth stretching of graphs: cycle-breaking edge removal, leaf
//! minimisation, greedy heuristic optimisation and gossip averaging.

pub mod error;
pub mod generators;
pub mod gossip;
pub mod graph;
pub mod harness;
pub mod leafmin;
pub mod metrics;
pub mod optimizer;
pub mod seed;
pub mod stretch;

pub use error::{Error, Result};
pub use graph::{Edge, Girth, Graph};
