//! Low-outdegree orientation by repeatedly peeling vertices of small
//! remaining degree.

use super::overlay::Overlay;
use super::route::{deliver, Parcel};
use crate::netsim::{Net, SimError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    /// Peeling phase in which each vertex retired.
    pub phase: Vec<usize>,
    pub phases: usize,
}

impl Orientation {
    /// Edge {u, v} points out of u iff (phase, key) of u is smaller.
    pub fn points_out(&self, ov: &Overlay, u: usize, v: usize) -> bool {
        (self.phase[u], ov.key[u]) < (self.phase[v], ov.key[v])
    }

    pub fn outdegree(&self, ov: &Overlay, u: usize) -> usize {
        ov.adj[u].iter().filter(|e| self.points_out(ov, u, e.0)).count()
    }
}

/// Degree threshold for arboricity bound `a`.
pub fn threshold(a: usize) -> usize {
    3 * a
}

/// Phases after which every vertex has retired if the arboricity bound
/// holds: each phase keeps at most a 2a/(3a+1) fraction.
pub fn phase_budget(n: usize, a: usize) -> usize {
    let keep = (3 * a + 1) as f64 / (2 * a) as f64;
    ((n.max(2) as f64).ln() / keep.ln()).ceil() as usize + 1
}

/// One round per phase, a fixed number of phases. Errors if vertices remain,
/// which means the arboricity bound was wrong.
pub fn orient_low_outdegree(net: &mut Net, ov: &Overlay, a: usize) -> Result<Orientation, SimError> {
    let p = ov.len();
    let phases = phase_budget(net.n().max(p), a);
    let limit = threshold(a);
    let mut phase = vec![usize::MAX; p];
    let mut live_deg: Vec<usize> = (0..p).map(|x| ov.degree(x)).collect();
    for i in 0..phases {
        let retiring: Vec<usize> = (0..p).filter(|&x| phase[x] == usize::MAX && live_deg[x] <= limit).collect();
        let mut parcels = Vec::new();
        for &x in &retiring {
            phase[x] = i;
            for &(y, _) in &ov.adj[x] {
                if phase[y] == usize::MAX || phase[y] == i {
                    parcels.push(Parcel::new(ov.host[x], ov.host[y], y, ()));
                }
            }
        }
        for (y, ()) in deliver(net, parcels)? {
            live_deg[y] -= 1;
        }
    }
    if phase.iter().any(|&f| f == usize::MAX) {
        return Err(SimError::Contract(format!(
            "peeling stalled after {phases} phases: arboricity exceeds {a}"
        )));
    }
    Ok(Orientation { phase, phases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{clog2, generate, GenParams, GraphClass, WeightedGraph};
    use crate::netsim::SimConfig;

    fn run(g: &WeightedGraph, a: usize) -> (Overlay, Orientation, usize) {
        let ov = Overlay::of_graph(g);
        let mut net = Net::new(g, &SimConfig::default()).unwrap();
        let o = orient_low_outdegree(&mut net, &ov, a).unwrap();
        (ov, o, net.round())
    }

    #[test]
    fn single_edge() {
        let g = WeightedGraph::new(2, &[(0, 1, 1)]).unwrap();
        let (ov, o, _) = run(&g, 1);
        assert_eq!((o.outdegree(&ov, 0), o.outdegree(&ov, 1)), (1, 0));
    }

    #[test]
    fn trees_have_outdegree_three() {
        for seed in 0..20 {
            let g = generate(GraphClass::Tree, 300, &GenParams::default(), seed).unwrap();
            let (ov, o, rounds) = run(&g, 1);
            assert!((0..g.n()).all(|v| o.outdegree(&ov, v) <= 3));
            assert!(o.phases <= 4 * clog2(g.n()));
            assert_eq!(rounds, o.phases);
        }
    }

    #[test]
    fn cycles_and_cacti_with_bound_two() {
        for (class, seed) in [(GraphClass::Cycle, 1), (GraphClass::Cactus, 2), (GraphClass::Pseudotree, 3)] {
            let g = generate(class, 200, &GenParams::default(), seed).unwrap();
            let (ov, o, _) = run(&g, 2);
            assert!((0..g.n()).all(|v| o.outdegree(&ov, v) <= 6));
        }
    }

    #[test]
    fn wrong_bound_stalls() {
        let mut e = Vec::new();
        for u in 0..8 {
            for v in u + 1..8 {
                e.push((u, v, 1));
            }
        }
        let g = WeightedGraph::new(8, &e).unwrap();
        let ov = Overlay::of_graph(&g);
        let mut net = Net::new(&g, &SimConfig::default()).unwrap();
        assert!(matches!(orient_low_outdegree(&mut net, &ov, 1), Err(SimError::Contract(_))));
    }
}
