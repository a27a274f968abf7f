//! Simulator for the hybrid network model (local CONGEST edges plus a
//! node-capacitated global clique) and distributed shortest-path and
//! diameter algorithms for paths, cycles, trees, pseudotrees, cacti and
//! sparse graphs.

pub mod cactus_algos;
pub mod dispatch;
pub mod error;
pub mod graphs;
pub mod line_cycle;
pub mod netsim;
pub mod primitives;
pub mod pseudotree_algos;
pub mod scaling;
pub mod sparse_algos;
pub mod tree_algos;

pub use dispatch::{run_algo, Algo, Output};
pub use error::AlgoError;
pub use graphs::{GraphClass, WeightedGraph};
pub use netsim::{Metrics, Net, SimConfig, SimError};
