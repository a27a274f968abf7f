//! Cycle detection, SSSP and diameter on graphs with at most one cycle.

use crate::error::{require, AlgoError};
use crate::graphs::{GraphClass, WeightedGraph};
use crate::line_cycle::ring_eccentricities;
use crate::netsim::{Net, SimError};
use crate::primitives::clique::allreduce_max;
use crate::primitives::euler::{build_tour, component_extreme, ring_shortcuts, RootedForest};
use crate::primitives::orient::orient_low_outdegree;
use crate::primitives::overlay::Overlay;
use crate::primitives::route::{deliver, Handle, Parcel};
use crate::primitives::upath::{broadcast_min, introduce_shortcuts, orient};
use crate::primitives::vlist::{introduce, window, Dir, VList};
use crate::tree_algos::{tree_diameter, tree_sssp, ForestTour};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleMembership {
    pub has_cycle: bool,
    pub on_cycle: Vec<bool>,
}

/// Traces the tour rings of the whole graph without cutting anything: one
/// ring for a tree, two for a pseudotree with a cycle, and exactly the
/// cycle nodes have visits on both.
pub fn detect_cycle(net: &mut Net, g: &WeightedGraph) -> Result<CycleMembership, AlgoError> {
    if g.m() > g.n() {
        return Err(AlgoError::WrongClass {
            expected: "pseudotree",
            found: crate::graphs::classify(g)?.class,
        });
    }
    let ov = Overlay::of_graph(g);
    let o = orient_low_outdegree(net, &ov, 2)?;
    let tour = build_tour(net, &ov, &o)?;
    let sc = ring_shortcuts(net, &tour)?;
    let ids: Vec<Handle> = (0..tour.list.len()).map(Handle).collect();
    let top = window(net, &tour.list, &sc, Dir::Forward, ids, |a, b, _| *a.max(b))?.pop().expect("levels");
    // every visit reports its ring to the owner, over the edge it sits by
    let parcels = (0..tour.list.len())
        .map(|q| Parcel::new(tour.list.host[q], ov.host[tour.owner[q]], tour.owner[q], top[q]))
        .collect();
    let mut seen: Vec<Option<Handle>> = vec![None; g.n()];
    let mut on_cycle = vec![false; g.n()];
    for (x, r) in deliver(net, parcels)? {
        match seen[x] {
            None => seen[x] = Some(r),
            Some(s) if s != r => on_cycle[x] = true,
            _ => {}
        }
    }
    let has_cycle = allreduce_max(net, on_cycle.clone())?[0];
    Ok(CycleMembership { has_cycle, on_cycle })
}

/// The trees hanging off the cycle, rooted at their cycle nodes, and the
/// cycle as a ring of its nodes.
struct Parts {
    trees: ForestTour,
    cycle_graph: WeightedGraph,
    /// Ring participants: cycle node ids in participant order.
    ring_nodes: Vec<usize>,
    ring: VList,
}

fn split(net: &mut Net, g: &WeightedGraph, on_cycle: &[bool]) -> Result<Parts, SimError> {
    let n = g.n();
    // neighbors learn each other's flag over the local edges
    let parcels = (0..n)
        .flat_map(|v| g.neighbors(v).iter().map(move |&(u, _)| Parcel::direct(v, u, on_cycle[v])))
        .collect();
    deliver(net, parcels)?;
    let is_cycle_edge = |u: usize, v: usize| on_cycle[u] && on_cycle[v];
    let trees = ForestTour::build(net, Overlay::subgraph(g, |u, v| !is_cycle_edge(u, v)))?;
    let cycle_graph = g.with_edges(|u, v, _| is_cycle_edge(u, v));
    let sc = introduce_shortcuts(net, &cycle_graph)?;
    let mark: Vec<Option<usize>> = (0..n).map(|v| on_cycle[v].then_some(v)).collect();
    let s = allreduce_max(net, mark)?[0].expect("a cycle exists");
    let fwd = orient(net, &sc, s)?;
    let ring_nodes: Vec<usize> = (0..n).filter(|&v| on_cycle[v]).collect();
    let mut at = vec![usize::MAX; n];
    for (i, &v) in ring_nodes.iter().enumerate() {
        at[v] = i;
    }
    let succ = ring_nodes.iter().map(|&v| fwd[v].map(|u| at[u])).collect();
    let wsucc = ring_nodes
        .iter()
        .map(|&v| fwd[v].and_then(|u| g.weight(v, u)).expect("cycle nodes have a forward neighbor") as i64)
        .collect();
    let ring = VList::from_succ(ring_nodes.clone(), succ, wsucc);
    Ok(Parts {
        trees,
        cycle_graph,
        ring_nodes,
        ring,
    })
}

fn allowed(c: GraphClass) -> bool {
    c.within(GraphClass::Pseudotree)
}

pub fn pseudotree_sssp(net: &mut Net, g: &WeightedGraph, s: usize) -> Result<Vec<u64>, AlgoError> {
    require(g, "pseudotree", allowed)?;
    let n = g.n();
    let cm = detect_cycle(net, g)?;
    if !cm.has_cycle {
        return tree_sssp(net, g, s);
    }
    let parts = split(net, g, &cm.on_cycle)?;
    let ft = &parts.trees;
    // which hanging tree holds s
    let sc = ring_shortcuts(net, &ft.tour)?;
    let is_s: Vec<bool> = (0..n).map(|v| v == s).collect();
    let has_s = component_extreme(net, &ft.ov, &ft.tour, &sc, &is_s, |a, b| *a || *b)?;
    let roots: Vec<bool> = (0..n).map(|v| v == s || (cm.on_cycle[v] && !has_s[v])).collect();
    let (near, _) = ft.distances(net, &roots, &vec![0; n])?;
    // around the cycle from the cycle node of s's tree
    let csc = introduce_shortcuts(net, &parts.cycle_graph)?;
    let init = (0..n).map(|v| (cm.on_cycle[v] && has_s[v]).then_some(near[v] as u64)).collect();
    let on_ring = broadcast_min(net, &csc, init)?;
    let roots = cm.on_cycle.clone();
    let seed: Vec<i64> = (0..n).map(|v| on_ring[v].map_or(0, |d| d as i64)).collect();
    let (far, _) = ft.distances(net, &roots, &seed)?;
    Ok((0..n).map(|v| if has_s[v] { near[v] } else { far[v] } as u64).collect())
}

/// Per vertex: the two largest h(child) + w over its children, summed (a
/// single child counts alone). The maximum over a tree is its diameter.
/// Children report over their parent edge; one round.
pub fn through_values(net: &mut Net, ov: &Overlay, rf: &RootedForest, h: &[i64]) -> Result<Vec<i64>, SimError> {
    let parcels = (0..ov.len())
        .filter_map(|x| {
            let p = rf.parent[x]?;
            let w = ov.adj[x][ov.index_of(x, p).expect("parent is a neighbor")].1 as i64;
            Some(Parcel::new(ov.host[x], ov.host[p], p, (h[x] + w, Handle(x))))
        })
        .collect();
    let mut top: Vec<[i64; 2]> = vec![[0, 0]; ov.len()];
    for (p, (v, _)) in deliver(net, parcels)? {
        let t = &mut top[p];
        if v > t[0] {
            t[1] = t[0];
            t[0] = v;
        } else if v > t[1] {
            t[1] = v;
        }
    }
    Ok(top.into_iter().map(|t| t[0] + t[1]).collect())
}

pub fn pseudotree_diameter(net: &mut Net, g: &WeightedGraph) -> Result<u64, AlgoError> {
    require(g, "pseudotree", allowed)?;
    let n = g.n();
    let cm = detect_cycle(net, g)?;
    if !cm.has_cycle {
        return tree_diameter(net, g);
    }
    let parts = split(net, g, &cm.on_cycle)?;
    let ft = &parts.trees;
    let rf = ft.root(net, &cm.on_cycle)?;
    let (d, d_vn) = rf.distances(net, &ft.ov, &vec![0; n])?;
    let h = rf.heights(net, &ft.ov, &d, &d_vn)?;
    let mut cand = through_values(net, &ft.ov, &rf, &h)?;

    let ring = &parts.ring;
    let sc = introduce(net, ring, n)?;
    let key: Vec<u64> = parts.ring_nodes.iter().map(|&v| v as u64).collect();
    let hr: Vec<i64> = parts.ring_nodes.iter().map(|&v| h[v]).collect();
    let re = ring_eccentricities(net, ring, &sc, &key, &hr)?;
    for (i, &v) in parts.ring_nodes.iter().enumerate() {
        if re.ecc[i] > h[v] {
            cand[v] = cand[v].max(re.ecc[i] + h[v]);
        }
    }
    Ok(allreduce_max(net, cand)?[0] as u64)
}
