//! Ground truth for the invariant tests: exact isomorphism on small graphs,
//! random cactus generation and exhaustive catalogues of small cactuses and
//! special pairs.

mod enumerate;
mod generate;
mod iso;
mod special;

use thiserror::Error;

pub use enumerate::{enumerate_small, enumerate_undirected_small, MAX_ROOTED_CATALOGUE, MAX_UNDIRECTED_CATALOGUE};
pub use generate::{random_cactus, GenConfig};
pub use iso::{isomorphic, AsStructure, Structure, MAX_ORACLE_VERTICES};
pub use special::{enumerate_special_pairs, enumerate_trees, labelled_tree_code, random_special_pair, tree_code};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{vertices} vertices exceeds the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
}
