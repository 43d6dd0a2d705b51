//! Rooted trees and forests: bases of the free pre-Lie algebra on one
//! generator and of its enveloping algebra.

mod forest;
mod graft;
mod rooted;

use thiserror::Error;

pub use forest::{exp_forest, project_pi, star_product, star_series, trees_as_forests, Forest, ForestSeries, TreeSeries};
pub use graft::{attach_all, fork_substitute, graft, multi_node_graft};
pub use rooted::{enumerate_trees, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("malformed tree encoding {0:?}")]
    Parse(String),
}
