//! Geometric t-spanners: the greedy spanner built in linear space over a
//! well-separated pair decomposition, with baselines and verification.
//!
//! The main entry point is [`greedy_spanner_build`]. [`greedy_naive`] is the
//! quadratic reference algorithm it must agree with edge for edge.

pub mod baseline;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod greedy;
pub mod io;
pub mod queue;
pub mod search;
pub mod verify;
pub mod wspd;

pub use baseline::{greedy_naive, theta_graph, wspd_spanner, wspd_spanner_edges, ThetaConfig};
pub use error::{Result, SpannerError};
pub use generate::{generate, GeneratorSpec, PointKind};
pub use geometry::{distance, Point, PointSet};
pub use graph::{GraphStats, SpannerGraph};
pub use greedy::{greedy_spanner_build, BuildReport, GreedyBuilder, GreedyConfig, PruneRule};
pub use search::{astar_to_region, bounded_sssp};
pub use verify::{max_dilation_exact, max_dilation_sampled, DilationReport};
pub use wspd::{build_split_tree, compute_wspd, pairs_sorted_by_min, SplitTree, Wspd, WspdPair};
