//! Pointer-jumping shortcuts on an undirected path or cycle of real nodes,
//! where every node only knows its (at most two) neighbors.

use super::route::{deliver, Parcel};
use super::vlist::levels_for;
use crate::graphs::WeightedGraph;
use crate::netsim::{Net, Payload, SimError, Widths};

/// `slot[k][x][i]`: the node 2^k hops from x on side i, with the path weight.
/// Side indices are consistent across levels at each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortcutTable {
    pub slot: Vec<Vec<[Option<(usize, u64)>; 2]>>,
}

impl ShortcutTable {
    pub fn top(&self) -> usize {
        self.slot.len() - 1
    }

    /// All shortcuts above level 0 as (u, v, weight) with u < v, deduplicated.
    pub fn shortcut_edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for lvl in self.slot.iter().skip(1) {
            for (x, s) in lvl.iter().enumerate() {
                for &(y, w) in s.iter().flatten() {
                    if x < y {
                        out.push((x, y, w));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone)]
struct Intro {
    via: usize,
    endpoint: usize,
    weight: u64,
}

impl Payload for Intro {
    fn bits(&self, w: &Widths) -> u32 {
        2 * w.id + w.weight
    }
    fn ids(&self) -> Vec<usize> {
        vec![self.via, self.endpoint]
    }
}

/// Builds levels 1..=⌊log₂(n−1)⌋ over the local graph, which must have
/// maximum degree 2. One round per level.
pub fn introduce_shortcuts(net: &mut Net, g: &WeightedGraph) -> Result<ShortcutTable, SimError> {
    let n = g.n();
    if g.max_degree() > 2 {
        return Err(SimError::Contract("shortcut lists need maximum degree 2".into()));
    }
    let base = (0..n)
        .map(|x| {
            let nb = g.neighbors(x);
            [nb.first().copied(), nb.get(1).copied()]
        })
        .collect();
    let mut slot: Vec<Vec<[Option<(usize, u64)>; 2]>> = vec![base];
    for k in 1..=levels_for(n) {
        let prev = &slot[k - 1];
        let mut parcels = Vec::new();
        for x in 0..n {
            if let [Some((a, wa)), Some((b, wb))] = prev[x] {
                if a == b {
                    continue;
                }
                parcels.push(Parcel::direct(x, a, Intro { via: x, endpoint: b, weight: wa + wb }));
                parcels.push(Parcel::direct(x, b, Intro { via: x, endpoint: a, weight: wa + wb }));
            }
        }
        let mut next = vec![[None, None]; n];
        for (y, m) in deliver(net, parcels)? {
            // the new shortcut extends the side on which the sender sits
            let side = (0..2)
                .find(|&i| prev[y][i].map(|e| e.0) == Some(m.via))
                .expect("introduction comes from a level k-1 neighbor");
            next[y][side] = Some((m.endpoint, m.weight));
        }
        slot.push(next);
    }
    Ok(ShortcutTable { slot })
}

/// Descending sweep: holders of a value send `v + w` over both sides at each
/// level; receivers keep the minimum. On a path this yields exact distances
/// from the sources; top + 1 rounds.
pub fn broadcast_min(net: &mut Net, sc: &ShortcutTable, init: Vec<Option<u64>>) -> Result<Vec<Option<u64>>, SimError> {
    let n = init.len();
    let mut val = init;
    for k in (0..=sc.top()).rev() {
        let mut parcels = Vec::new();
        for x in 0..n {
            if let Some(v) = val[x] {
                for &(y, w) in sc.slot[k][x].iter().flatten() {
                    parcels.push(Parcel::direct(x, y, v + w));
                }
            }
        }
        for (y, v) in deliver(net, parcels)? {
            if val[y].map_or(true, |c| v < c) {
                val[y] = Some(v);
            }
        }
    }
    Ok(val)
}

fn side_of(sc: &ShortcutTable, k: usize, y: usize, from: usize) -> Option<usize> {
    (0..2).find(|&i| sc.slot[k][y][i].map(|e| e.0) == Some(from))
}

/// Directs a path or cycle away from `s`: each node learns which of its
/// level-0 sides is forward. On a cycle the forward direction from s is
/// its side 0. Returns the forward neighbor of every node (None at the end
/// of a path). top + 1 rounds, plus two on cycles of length 2^k.
pub fn orient(net: &mut Net, sc: &ShortcutTable, s: usize) -> Result<Vec<Option<usize>>, SimError> {
    let n = sc.slot[0].len();
    // forward side index once known
    let mut fwd: Vec<Option<usize>> = vec![None; n];
    let mut start = 0;
    if sc.slot[0][s][0].is_none() {
        start = 1;
    }
    fwd[s] = Some(start);
    let mut pending = vec![false; n];
    let mut pending_level = None;
    let send = |fwd: &[Option<usize>], k: usize, from: &dyn Fn(usize) -> bool| -> Vec<Parcel<usize>> {
        (0..n)
            .filter(|&x| from(x))
            .filter_map(|x| sc.slot[k][x][fwd[x]?].map(|(y, _)| Parcel::direct(x, y, x)))
            .collect()
    };
    for k in (0..=sc.top()).rev() {
        let parcels = send(&fwd, k, &|x| fwd[x].is_some());
        for (y, from) in deliver(net, parcels)? {
            if fwd[y].is_some() {
                continue;
            }
            // on a cycle of length 2^(k+1) both level-k sides are the same node
            if sc.slot[k][y][0].map(|e| e.0) == sc.slot[k][y][1].map(|e| e.0) {
                pending[y] = true;
                pending_level = Some(k);
                continue;
            }
            let back = side_of(sc, k, y, from).expect("sender is a level-k neighbor");
            fwd[y] = Some(1 - back);
        }
        if pending_level.is_some_and(|l| l > k) {
            // the node halfway to the antipode is oriented now and sits on
            // exactly one of its sides; the antipode then catches up on
            // its own level-k send
            let parcels = send(&fwd, k, &|x| fwd[x].is_some_and(|f| sc.slot[k][x][f].is_some_and(|(y, _)| pending[y])));
            for (y, from) in deliver(net, parcels)? {
                let back = side_of(sc, k, y, from).expect("sender is a level-k neighbor");
                fwd[y] = Some(1 - back);
            }
            let parcels = send(&fwd, k, &|x| pending[x]);
            for (y, from) in deliver(net, parcels)? {
                if fwd[y].is_none() {
                    fwd[y] = Some(1 - side_of(sc, k, y, from).expect("sender is a level-k neighbor"));
                }
            }
            pending = vec![false; n];
            pending_level = None;
        }
    }
    Ok((0..n)
        .map(|x| fwd[x].and_then(|f| sc.slot[0][x][f]).map(|e| e.0))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netsim::SimConfig;

    fn p4() -> WeightedGraph {
        WeightedGraph::new(4, &[(0, 1, 2), (1, 2, 3), (2, 3, 1)]).unwrap()
    }

    #[test]
    fn four_node_path() {
        let g = p4();
        let mut net = Net::new(&g, &SimConfig::default()).unwrap();
        let sc = introduce_shortcuts(&mut net, &g).unwrap();
        assert_eq!(net.round(), 1);
        assert_eq!(sc.shortcut_edges(), vec![(0, 2, 5), (1, 3, 4)]);
        let mut init = vec![None; 4];
        init[0] = Some(0);
        let d = broadcast_min(&mut net, &sc, init).unwrap();
        assert_eq!(d, vec![Some(0), Some(2), Some(5), Some(6)]);
    }

    #[test]
    fn two_nodes_have_no_shortcuts() {
        let g = WeightedGraph::new(2, &[(0, 1, 3)]).unwrap();
        let mut net = Net::new(&g, &SimConfig::default()).unwrap();
        let sc = introduce_shortcuts(&mut net, &g).unwrap();
        assert!(sc.shortcut_edges().is_empty());
        let d = broadcast_min(&mut net, &sc, vec![Some(0), None]).unwrap();
        assert_eq!(d, vec![Some(0), Some(3)]);
    }

    #[test]
    fn unit_nine_path_endpoints() {
        let e: Vec<_> = (1..9).map(|i| (i - 1, i, 1)).collect();
        let g = WeightedGraph::new(9, &e).unwrap();
        let mut net = Net::new(&g, &SimConfig::default()).unwrap();
        let sc = introduce_shortcuts(&mut net, &g).unwrap();
        assert_eq!(net.round(), 3);
        assert!(sc.shortcut_edges().contains(&(0, 8, 8)));
        let d = broadcast_min(&mut net, &sc, vec![Some(0); 9]).unwrap();
        assert!(d.iter().all(|&v| v == Some(0)));
    }

    #[test]
    fn degree_three_rejected() {
        let g = WeightedGraph::new(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        let mut net = Net::new(&g, &SimConfig::default()).unwrap();
        assert!(matches!(introduce_shortcuts(&mut net, &g), Err(SimError::Contract(_))));
    }

    #[test]
    fn orientation_follows_cycle() {
        let gcd = |mut a: usize, mut b: usize| {
            while b > 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        for n in (3..40).chain([64, 128, 256]) {
            let m = (5..).find(|&a| gcd(a, n) == 1).unwrap();
            let e: Vec<_> = (0..n).map(|i| ((i * m) % n, ((i + 1) * m) % n, 1 + i as u64 % 3)).collect();
            let g = WeightedGraph::new(n, &e).unwrap();
            let mut net = Net::new(&g, &SimConfig::default()).unwrap();
            let sc = introduce_shortcuts(&mut net, &g).unwrap();
            for s in [0, n / 2] {
                let f = orient(&mut net, &sc, s).unwrap();
                let mut x = s;
                let mut seen = vec![false; n];
                for _ in 0..n {
                    assert!(!seen[x]);
                    seen[x] = true;
                    x = f[x].unwrap();
                }
                assert_eq!(x, s);
            }
        }
    }

    #[test]
    fn path_sweeps_match_oracle() {
        use crate::graphs::{generate, oracle_sssp, GenParams, GraphClass};
        for seed in 0..30 {
            let g = generate(GraphClass::Path, 50 + seed as usize, &GenParams::default(), seed).unwrap();
            let mut net = Net::new(&g, &SimConfig::default()).unwrap();
            let sc = introduce_shortcuts(&mut net, &g).unwrap();
            for (u, v, w) in sc.shortcut_edges() {
                assert_eq!(oracle_sssp(&g, u)[v], w);
            }
            let s = seed as usize % g.n();
            let mut init = vec![None; g.n()];
            init[s] = Some(0);
            let d: Vec<u64> = broadcast_min(&mut net, &sc, init).unwrap().into_iter().map(Option::unwrap).collect();
            assert_eq!(d, oracle_sssp(&g, s));
            let f = orient(&mut net, &sc, s).unwrap();
            assert!(f.iter().filter(|x| x.is_none()).count() >= 1);
        }
    }
}
