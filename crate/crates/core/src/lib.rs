//! Link prediction on homogeneous undirected graphs: thirteen local
//! similarity heuristics, two enclosing-subgraph neural predictors (WLNM and
//! a lightweight SEAL variant), a connectivity-preserving fold splitter and
//! the precision / AUC / timing evaluation protocol used to compare them.

pub mod error;
pub mod eval;
pub mod experiment;
pub mod graph;
pub mod heuristics;
pub mod models;
pub mod nn;
pub mod rng;
pub mod split;
pub mod subgraph;

pub use error::{Error, Result};
pub use eval::{MetricsReport, MetricsRow};
pub use graph::{EdgeListFormat, Graph, GraphStats, NodeId, Pair};
pub use heuristics::{HeuristicId, ScoredPair};
pub use split::{PairSet, Polarity, SplitBundle};

/// Toolkit version recorded in provenance records.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
