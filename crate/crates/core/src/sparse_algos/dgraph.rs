//! The distance graph over the decomposition tree and Bellman-Ford on it.

use super::decomp::{level_budget, Binarized, DecompositionTree, Label};
use crate::graphs::clog2;
use crate::netsim::{Net, Payload, SimError, Widths};
use crate::primitives::overlay::Overlay;
use crate::primitives::route::{deliver, Handle, Parcel};

/// Decomposition-tree edges plus the ancestor edges found by descending,
/// all weighted by the tree distance of their endpoints.
#[derive(Debug, Clone)]
pub struct DistanceGraph {
    pub ov: Overlay,
    /// The added (non-decomposition) edges as (ancestor, descendant, w).
    pub added: Vec<(usize, usize, i64)>,
}

#[derive(Debug, Clone, Copy)]
struct Depth(u32);

impl Payload for Depth {
    fn bits(&self, w: &Widths) -> u32 {
        clog2(w.id as usize + 3) as u32
    }
}

#[derive(Debug, Clone)]
enum Walk {
    /// Heading for the vertex labelled `target`; `first` marks the hop to
    /// the origin's own child, which is a decomposition edge already.
    Descend {
        origin: Handle,
        depth: Depth,
        target: Label,
        first: bool,
    },
    Found(Handle, i64),
}

impl Payload for Walk {
    fn bits(&self, w: &Widths) -> u32 {
        1 + match self {
            Walk::Descend { origin, depth, target, .. } => origin.bits(w) + depth.bits(w) + target.bits(w) + 1,
            Walk::Found(h, d) => h.bits(w) + d.bits(w),
        }
    }
}

/// For a decomposition edge (a, v) the neighbor y of a in v's component
/// may lie deeper than v. The walk from v down toward y gives a an edge to
/// every vertex on the way; each such vertex already knows its distance
/// to a. Walks from distinct ancestors never meet in the same round at
/// the same vertex, and all of them run in parallel for the depth budget.
pub fn build_distance_graph(net: &mut Net, b: &Binarized, t: &DecompositionTree) -> Result<DistanceGraph, SimError> {
    let m3 = &b.ov;
    let p = m3.len();
    // labels cross the binarized tree edges
    let parcels = (0..p)
        .flat_map(|x| m3.adj[x].iter().map(move |&(y, _)| Parcel::new(m3.host[x], m3.host[y], y, (Handle(x), t.label[x]))))
        .collect();
    let mut nlabel: Vec<Vec<(usize, Label)>> = vec![Vec::new(); p];
    for (y, (Handle(x), l)) in deliver(net, parcels)? {
        nlabel[y].push((x, l));
    }

    let mut edges: Vec<(usize, usize, u64)> = (0..p)
        .filter_map(|v| t.parent[v].map(|a| (a, v, t.weight[v] as u64)))
        .collect();
    let mut added = Vec::new();
    let mut parcels = Vec::new();
    for a in 0..p {
        for &(br, v) in &t.children[a] {
            let y = m3.adj[a][br.0 as usize].0;
            if y != v {
                let target = nlabel[a].iter().find(|e| e.0 == y).expect("label from neighbor").1;
                parcels.push(Parcel::new(
                    m3.host[a],
                    m3.host[v],
                    v,
                    Walk::Descend {
                        origin: Handle(a),
                        depth: Depth(t.label[a].len),
                        target,
                        first: true,
                    },
                ));
            }
        }
    }
    for _ in 0..=level_budget(b.n) {
        let mut next = Vec::new();
        for (x, msg) in deliver(net, parcels)? {
            match msg {
                Walk::Descend { origin, depth, target, first } => {
                    if !first {
                        let w = t.anc[x][depth.0 as usize];
                        added.push((origin.0, x, w));
                        next.push(Parcel::new(m3.host[x], m3.host[origin.0], origin.0, Walk::Found(Handle(x), w)));
                    }
                    if t.label[x] != target {
                        let c = t.children[x]
                            .iter()
                            .map(|&(_, c)| c)
                            .find(|&c| t.label[c].is_prefix_of(&target))
                            .ok_or_else(|| SimError::Contract("walk target outside the subtree".into()))?;
                        next.push(Parcel::new(
                            m3.host[x],
                            m3.host[c],
                            c,
                            Walk::Descend {
                                origin,
                                depth,
                                target,
                                first: false,
                            },
                        ));
                    }
                }
                Walk::Found(..) => {}
            }
        }
        parcels = next;
    }
    if !parcels.is_empty() {
        return Err(SimError::Contract("walks outlasted the depth budget".into()));
    }
    added.sort_unstable();
    edges.extend(added.iter().map(|&(a, x, w)| (a, x, w as u64)));
    Ok(DistanceGraph {
        ov: Overlay::from_edges(m3.host.clone(), m3.key.clone(), &edges),
        added,
    })
}

/// A Bellman-Ford value: distance to `src`, plus a value that travels with
/// the source unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reach {
    pub dist: i64,
    pub src: usize,
    pub extra: i64,
}

impl Reach {
    /// Shorter first, then the higher source id.
    pub fn better(&self, o: &Reach) -> bool {
        (self.dist, std::cmp::Reverse(self.src)) < (o.dist, std::cmp::Reverse(o.src))
    }
}

impl Payload for Reach {
    fn bits(&self, w: &Widths) -> u32 {
        2 * w.weight + w.id
    }
}

/// Rounds after which every vertex has its exact nearest source: a
/// shortest path climbs to the decomposition LCA and descends again.
pub fn bellman_ford_rounds(n: usize) -> usize {
    2 * level_budget(n)
}

/// Multi-source Bellman-Ford for a fixed number of rounds; a vertex sends
/// to all its neighbors in the round after its value improved.
pub fn bellman_ford(net: &mut Net, ov: &Overlay, init: Vec<Option<Reach>>, rounds: usize) -> Result<Vec<Option<Reach>>, SimError> {
    let p = ov.len();
    let mut best = init;
    let mut changed: Vec<bool> = best.iter().map(Option::is_some).collect();
    for _ in 0..rounds {
        let mut parcels = Vec::new();
        for x in (0..p).filter(|&x| changed[x]) {
            let r = best[x].expect("changed vertices hold a value");
            for &(y, w) in &ov.adj[x] {
                let r = Reach {
                    dist: r.dist + w as i64,
                    ..r
                };
                parcels.push(Parcel::new(ov.host[x], ov.host[y], y, r));
            }
        }
        changed = vec![false; p];
        for (y, r) in deliver(net, parcels)? {
            if best[y].map_or(true, |b| r.better(&b)) {
                best[y] = Some(r);
                changed[y] = true;
            }
        }
    }
    Ok(best)
}

/// Per real node: its nearest shortcut vertex, the distance, and the
/// vertex's number, highest id among ties. None when there are no shortcut
/// vertices (a pure tree).
pub fn nearest_shortcuts(
    net: &mut Net,
    b: &Binarized,
    dg: &DistanceGraph,
    number: &[Option<usize>],
) -> Result<Option<Vec<(usize, i64, usize)>>, SimError> {
    if number.iter().all(Option::is_none) {
        return Ok(None);
    }
    let init = (0..dg.ov.len())
        .map(|x| {
            let k = if x < b.n { number[x] } else { None };
            k.map(|k| Reach {
                dist: 0,
                src: x,
                extra: k as i64,
            })
        })
        .collect();
    let got = bellman_ford(net, &dg.ov, init, bellman_ford_rounds(b.n))?;
    Ok(Some(
        (0..b.n)
            .map(|v| {
                let r = got[v].expect("every vertex reaches a shortcut vertex");
                (r.src, r.dist, r.extra as usize)
            })
            .collect(),
    ))
}
