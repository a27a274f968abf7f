//! Exact SSSP and diameter on trees through the Euler tour.

use crate::error::{require, AlgoError};
use crate::graphs::{GraphClass, WeightedGraph};
use crate::netsim::{Net, SimError};
use crate::primitives::clique::allreduce_max;
use crate::primitives::euler::{build_tour, root_tour, RootedForest, Tour};
use crate::primitives::orient::orient_low_outdegree;
use crate::primitives::overlay::Overlay;

/// A forest overlay with its (uncut) tour, ready to be rooted repeatedly.
#[derive(Debug, Clone)]
pub struct ForestTour {
    pub ov: Overlay,
    pub tour: Tour,
}

impl ForestTour {
    pub fn build(net: &mut Net, ov: Overlay) -> Result<Self, SimError> {
        let orient = orient_low_outdegree(net, &ov, 1)?;
        let tour = build_tour(net, &ov, &orient)?;
        Ok(ForestTour { ov, tour })
    }

    /// Roots every component at its flagged vertex.
    pub fn root(&self, net: &mut Net, roots: &[bool]) -> Result<RootedForest, SimError> {
        root_tour(net, &self.ov, self.tour.clone(), Some(roots))
    }

    /// Distances from the roots, each root starting at `seed[root]`; the
    /// rooted forest comes back for further queries.
    pub fn distances(&self, net: &mut Net, roots: &[bool], seed: &[i64]) -> Result<(Vec<i64>, RootedForest), SimError> {
        let rf = self.root(net, roots)?;
        let (d, _) = rf.distances(net, &self.ov, seed)?;
        Ok((d, rf))
    }
}

fn to_u64(d: Vec<i64>) -> Vec<u64> {
    d.into_iter().map(|x| x as u64).collect()
}

pub fn tree_sssp(net: &mut Net, g: &WeightedGraph, s: usize) -> Result<Vec<u64>, AlgoError> {
    require(g, "tree", |c| c.within(GraphClass::Tree))?;
    let ft = ForestTour::build(net, Overlay::of_graph(g))?;
    let roots: Vec<bool> = (0..g.n()).map(|v| v == s).collect();
    Ok(to_u64(ft.distances(net, &roots, &vec![0; g.n()])?.0))
}

/// Diameter of every component of a forest overlay: distances from the
/// highest key, then from the farthest vertex found (highest key among
/// ties). Assumes a single component when the global clique picks the
/// farthest vertex.
pub fn tree_diameter_on(net: &mut Net, ft: &ForestTour) -> Result<u64, SimError> {
    let p = ft.ov.len();
    let top = allreduce_max(net, ft.ov.key.clone())?[0];
    let roots: Vec<bool> = (0..p).map(|x| ft.ov.key[x] == top).collect();
    let (d, _) = ft.distances(net, &roots, &vec![0; p])?;
    let far = allreduce_max(net, (0..p).map(|x| (d[x] as u64, ft.ov.key[x])).collect())?[0];
    let roots: Vec<bool> = (0..p).map(|x| ft.ov.key[x] == far.1).collect();
    let (d, _) = ft.distances(net, &roots, &vec![0; p])?;
    Ok(allreduce_max(net, to_u64(d))?[0])
}

pub fn tree_diameter(net: &mut Net, g: &WeightedGraph) -> Result<u64, AlgoError> {
    require(g, "tree", |c| c.within(GraphClass::Tree))?;
    if g.n() == 1 {
        return Ok(0);
    }
    let ft = ForestTour::build(net, Overlay::of_graph(g))?;
    Ok(tree_diameter_on(net, &ft)?)
}
