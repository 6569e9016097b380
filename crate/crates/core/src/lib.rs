//! Biclique covers and partitions of graphs.
//!
//! Exact search for small instances, a clique-tree/edge-ranking heuristic for
//! co-chordal graphs, and lower bounds that certify both.

pub mod biclique;
pub mod bounds;
pub mod chordal;
pub mod cochordal;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod tree_rank;

pub use biclique::{verify_cover, verify_partition, Biclique};
pub use bounds::{full_report, BoundReport, ReportOptions};
pub use chordal::{clique_tree, is_chordal, CliqueTree};
pub use cochordal::{
    cover_cochordal, find_partition, CoverOptions, CoverOutcome, EdgePolicy, RankingMode,
};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexSet};
pub use oracle::{OracleBudget, Window};
pub use tree_rank::{EdgeRanking, Tree};
