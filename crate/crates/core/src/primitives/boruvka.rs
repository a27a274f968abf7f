//! Deterministic minimum spanning tree by fragment merging.

use super::euler::{build_tour, component_extreme, ring_shortcuts};
use super::orient::orient_low_outdegree;
use super::overlay::Overlay;
use super::route::{deliver, Parcel};
use crate::graphs::{clog2, WeightedGraph};
use crate::netsim::{Net, SimError};
use std::collections::HashSet;

/// Edge order: weight, then the smaller endpoint id, then the larger.
pub type EdgeKey = (u64, usize, usize);

pub fn edge_key(u: usize, v: usize, w: u64) -> EdgeKey {
    (w, u.min(v), u.max(v))
}

/// Each phase every fragment picks its lightest outgoing edge, found by a
/// MIN over the fragment's tour; fragments are named by their largest id.
/// At most ⌈log₂ n⌉ + 1 phases for a connected graph. Returns the tree
/// edges as (u, v, w) with u < v, sorted.
pub fn minimum_spanning_tree(net: &mut Net, g: &WeightedGraph) -> Result<Vec<(usize, usize, u64)>, SimError> {
    let n = g.n();
    let mut tree: HashSet<(usize, usize)> = HashSet::new();
    for _ in 0..=clog2(n) + 1 {
        let ov = Overlay::subgraph(g, |u, v| tree.contains(&(u.min(v), u.max(v))));
        let orient = orient_low_outdegree(net, &ov, 1)?;
        let tour = build_tour(net, &ov, &orient)?;
        let sc = ring_shortcuts(net, &tour)?;
        let frag = component_extreme(net, &ov, &tour, &sc, &ov.key, |a, b| *a.max(b))?;
        // fragment names cross every edge
        let parcels = (0..n)
            .flat_map(|v| g.neighbors(v).iter().map(move |&(u, _)| (v, u)))
            .map(|(v, u)| Parcel::direct(v, u, (v, frag[v])))
            .collect();
        let mut nfrag = vec![Vec::new(); n];
        for (u, (v, f)) in deliver(net, parcels)? {
            nfrag[u].push((v, f));
        }
        let cand: Vec<Option<EdgeKey>> = (0..n)
            .map(|x| {
                nfrag[x]
                    .iter()
                    .filter(|&&(_, f)| f != frag[x])
                    .map(|&(y, _)| edge_key(x, y, g.weight(x, y).expect("neighbor")))
                    .min()
            })
            .collect();
        let best = component_extreme(net, &ov, &tour, &sc, &cand, |a, b| match (a, b) {
            (Some(a), Some(b)) => Some(*a.min(b)),
            (a, None) => *a,
            (None, b) => *b,
        })?;
        if best.iter().all(Option::is_none) {
            let mut out: Vec<_> = tree.iter().map(|&(u, v)| (u, v, g.weight(u, v).unwrap())).collect();
            out.sort_unstable();
            return Ok(out);
        }
        // the endpoint inside the fragment adds the edge and tells the other side
        let mut parcels = Vec::new();
        for x in 0..n {
            if let (Some(c), Some(b)) = (cand[x], best[x]) {
                if c == b {
                    let y = if c.1 == x { c.2 } else { c.1 };
                    tree.insert((c.1, c.2));
                    parcels.push(Parcel::direct(x, y, ()));
                }
            }
        }
        deliver(net, parcels)?;
    }
    Err(SimError::Contract("fragment merging did not finish; graph disconnected?".into()))
}
