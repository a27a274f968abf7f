//! Exact SSSP and diameter on paths and cycles.

pub mod ring;

use crate::error::{require, AlgoError};
use crate::graphs::{GraphClass, WeightedGraph};
use crate::netsim::Net;
use crate::primitives::clique::allreduce_max;
use crate::primitives::upath::{broadcast_min, introduce_shortcuts, orient};
use crate::primitives::vlist::{introduce, VList};

pub use ring::{ring_eccentricities, source_pass, RingEcc, RingPass};

fn distances_from(net: &mut Net, g: &WeightedGraph, s: usize) -> Result<Vec<u64>, AlgoError> {
    let sc = introduce_shortcuts(net, g)?;
    let mut init = vec![None; g.n()];
    init[s] = Some(0);
    let d = broadcast_min(net, &sc, init)?;
    Ok(d.into_iter().map(|x| x.expect("connected")).collect())
}

pub fn path_sssp(net: &mut Net, g: &WeightedGraph, s: usize) -> Result<Vec<u64>, AlgoError> {
    require(g, "path", |c| c == GraphClass::Path)?;
    distances_from(net, g, s)
}

/// The distance between the two endpoints, known at every node.
pub fn path_diameter(net: &mut Net, g: &WeightedGraph) -> Result<u64, AlgoError> {
    require(g, "path", |c| c == GraphClass::Path)?;
    let n = g.n();
    if n == 1 {
        return Ok(0);
    }
    let sc = introduce_shortcuts(net, g)?;
    // the endpoint with the higher id is the source
    let mark: Vec<Option<usize>> = (0..n).map(|v| (g.degree(v) == 1).then_some(v)).collect();
    let s = allreduce_max(net, mark)?[0].expect("a path has endpoints");
    let mut init = vec![None; n];
    init[s] = Some(0);
    let d: Vec<u64> = broadcast_min(net, &sc, init)?.into_iter().map(|x| x.expect("connected")).collect();
    Ok(allreduce_max(net, d)?[0])
}

/// Shortest of the two ways around.
pub fn cycle_sssp(net: &mut Net, g: &WeightedGraph, s: usize) -> Result<Vec<u64>, AlgoError> {
    require(g, "cycle", |c| c == GraphClass::Cycle)?;
    distances_from(net, g, s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDiameter {
    pub ecc: Vec<u64>,
    pub far_left: Vec<usize>,
    pub far_right: Vec<usize>,
    pub diameter: u64,
}

/// Directs the cycle from its highest id as a ring of real nodes.
pub fn cycle_ring(net: &mut Net, g: &WeightedGraph) -> Result<VList, AlgoError> {
    let n = g.n();
    let s = allreduce_max(net, (0..n).collect())?[0];
    let sc = introduce_shortcuts(net, g)?;
    let fwd = orient(net, &sc, s)?;
    let succ: Vec<Option<usize>> = fwd;
    let wsucc = (0..n)
        .map(|v| succ[v].and_then(|u| g.weight(v, u)).expect("cycle") as i64)
        .collect();
    Ok(VList::from_succ((0..n).collect(), succ, wsucc))
}

pub fn cycle_farthest_and_diameter(net: &mut Net, g: &WeightedGraph) -> Result<CycleDiameter, AlgoError> {
    require(g, "cycle", |c| c == GraphClass::Cycle)?;
    let n = g.n();
    let list = cycle_ring(net, g)?;
    let sc = introduce(net, &list, n)?;
    let key: Vec<u64> = (0..n as u64).collect();
    let out = ring_eccentricities(net, &list, &sc, &key, &vec![0; n])?;
    let ecc: Vec<u64> = out.ecc.iter().map(|&e| e as u64).collect();
    let diameter = allreduce_max(net, ecc.clone())?[0];
    Ok(CycleDiameter {
        ecc,
        far_left: out.far_left,
        far_right: out.far_right,
        diameter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, oracle_diameter, oracle_eccentricities, oracle_sssp, GenParams};
    use crate::netsim::SimConfig;

    fn net(g: &WeightedGraph) -> Net {
        Net::new(g, &SimConfig::default()).unwrap()
    }

    fn p4() -> WeightedGraph {
        WeightedGraph::new(4, &[(0, 1, 2), (1, 2, 3), (2, 3, 1)]).unwrap()
    }

    fn c4() -> WeightedGraph {
        WeightedGraph::new(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)]).unwrap()
    }

    fn unit_cycle(n: usize) -> WeightedGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    #[test]
    fn path_examples() {
        let g = p4();
        assert_eq!(path_sssp(&mut net(&g), &g, 0).unwrap(), vec![0, 2, 5, 6]);
        assert_eq!(path_diameter(&mut net(&g), &g).unwrap(), 6);
        let g2 = WeightedGraph::new(2, &[(0, 1, 9)]).unwrap();
        assert_eq!(path_diameter(&mut net(&g2), &g2).unwrap(), 9);
    }

    #[test]
    fn cycle_sssp_examples() {
        let g = c4();
        assert_eq!(cycle_sssp(&mut net(&g), &g, 0).unwrap(), vec![0, 1, 3, 4]);
        let g = unit_cycle(6);
        assert_eq!(cycle_sssp(&mut net(&g), &g, 0).unwrap(), vec![0, 1, 2, 3, 2, 1]);
        let g = WeightedGraph::new(3, &[(0, 1, 1), (0, 2, 1), (1, 2, 10)]).unwrap();
        assert_eq!(cycle_sssp(&mut net(&g), &g, 0).unwrap()[2], 1);
        assert_eq!(cycle_sssp(&mut net(&g), &g, 1).unwrap()[2], 2);
    }

    #[test]
    fn cycle_diameter_examples() {
        let g = c4();
        let r = cycle_farthest_and_diameter(&mut net(&g), &g).unwrap();
        assert_eq!(r.diameter, 5);
        assert_eq!(r.ecc, vec![4, 5, 3, 5]);
        let g = unit_cycle(6);
        let r = cycle_farthest_and_diameter(&mut net(&g), &g).unwrap();
        assert_eq!(r.diameter, 3);
        assert_eq!(r.ecc, vec![3; 6]);
    }

    #[test]
    fn wrong_class_rejected() {
        let g = c4();
        assert!(matches!(path_sssp(&mut net(&g), &g, 0), Err(AlgoError::WrongClass { .. })));
        let g = p4();
        assert!(matches!(cycle_sssp(&mut net(&g), &g, 0), Err(AlgoError::WrongClass { .. })));
    }

    #[test]
    fn generated_cycles_match_oracle() {
        for seed in 0..29u64 {
            let n = if seed >= 25 { 1 << (seed - 23) } else { 3 + (seed as usize * 37) % 300 };
            let params = if seed % 4 == 0 { GenParams::weights(1, 1) } else { GenParams::default() };
            let g = generate(GraphClass::Cycle, n, &params, seed).unwrap();
            let mut nt = net(&g);
            let r = cycle_farthest_and_diameter(&mut nt, &g).unwrap();
            assert!(nt.metrics().overflow_events.is_empty());
            assert_eq!(r.ecc, oracle_eccentricities(&g), "seed {seed}");
            assert_eq!(r.diameter, oracle_diameter(&g));
            let s = seed as usize % n;
            assert_eq!(cycle_sssp(&mut net(&g), &g, s).unwrap(), oracle_sssp(&g, s));
        }
    }

    #[test]
    fn generated_paths_match_oracle() {
        for seed in 0..25u64 {
            let n = 2 + (seed as usize * 53) % 400;
            let g = generate(GraphClass::Path, n, &GenParams::default(), seed).unwrap();
            assert_eq!(path_diameter(&mut net(&g), &g).unwrap(), oracle_diameter(&g));
            assert_eq!(path_sssp(&mut net(&g), &g, 0).unwrap(), oracle_sssp(&g, 0));
        }
    }
}
