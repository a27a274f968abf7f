//! Picks the algorithm for a graph's class.

use crate::error::AlgoError;
use crate::graphs::{classify, GraphClass, GraphError, WeightedGraph};
use crate::netsim::Net;
use crate::{cactus_algos, line_cycle, pseudotree_algos, sparse_algos, tree_algos};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Sssp,
    Diameter,
    ApproxSssp,
    ApproxDiameter,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Sssp, Algo::Diameter, Algo::ApproxSssp, Algo::ApproxDiameter];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Sssp => "sssp",
            Algo::Diameter => "diameter",
            Algo::ApproxSssp => "approx-sssp",
            Algo::ApproxDiameter => "approx-diameter",
        }
    }

    pub fn needs_source(self) -> bool {
        matches!(self, Algo::Sssp | Algo::ApproxSssp)
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Algo::Sssp | Algo::Diameter)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm '{s}' (expected sssp, diameter, approx-sssp or approx-diameter)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Output {
    Distances(Vec<u64>),
    Diameter(u64),
}

/// Runs `algo` with the implementation for `g`'s class. The exact
/// algorithms take paths, cycles, trees, pseudotrees and cacti; the
/// approximations take sparse graphs.
pub fn run_algo(net: &mut Net, g: &WeightedGraph, algo: Algo, source: usize) -> Result<Output, AlgoError> {
    if algo.needs_source() && source >= g.n() {
        return Err(GraphError::Params(format!("source {source} is not a node of a graph with n = {}", g.n())).into());
    }
    let class = classify(g)?.class;
    use GraphClass::*;
    let wrong = |expected| Err(AlgoError::WrongClass { expected, found: class });
    Ok(match algo {
        Algo::Sssp => Output::Distances(match class {
            Path => line_cycle::path_sssp(net, g, source)?,
            Cycle => line_cycle::cycle_sssp(net, g, source)?,
            Tree => tree_algos::tree_sssp(net, g, source)?,
            Pseudotree => pseudotree_algos::pseudotree_sssp(net, g, source)?,
            Cactus => cactus_algos::cactus_sssp(net, g, source)?,
            Sparse | Other => return wrong("path, cycle, tree, pseudotree or cactus"),
        }),
        Algo::Diameter => Output::Diameter(match class {
            Path => line_cycle::path_diameter(net, g)?,
            Cycle => line_cycle::cycle_farthest_and_diameter(net, g)?.diameter,
            Tree => tree_algos::tree_diameter(net, g)?,
            Pseudotree => pseudotree_algos::pseudotree_diameter(net, g)?,
            Cactus => cactus_algos::cactus_diameter(net, g)?,
            Sparse | Other => return wrong("path, cycle, tree, pseudotree or cactus"),
        }),
        Algo::ApproxSssp => Output::Distances(sparse_algos::approx_sssp(net, g, source)?),
        Algo::ApproxDiameter => Output::Diameter(sparse_algos::approx_diameter(net, g)?),
    })
}
