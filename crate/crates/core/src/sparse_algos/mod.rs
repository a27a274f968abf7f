//! Approximate SSSP and diameter on sparse graphs: exact answers on the
//! spanning tree, corrected through the shortcut vertices (endpoints of
//! non-tree edges) and their pairwise distances.

pub mod apsp;
pub mod decomp;
pub mod dgraph;

pub use apsp::{number_shortcuts, shortcut_apsp, ShortcutApsp};
pub use decomp::{binarize, build_decomposition_tree, Binarized, DecompositionTree, Label};
pub use dgraph::{build_distance_graph, nearest_shortcuts, DistanceGraph, Reach};

use crate::error::{require, AlgoError};
use crate::graphs::{sparse_edge_bound, GraphClass, WeightedGraph};
use crate::netsim::{Net, SimError};
use crate::primitives::boruvka::minimum_spanning_tree;
use crate::primitives::clique::{allreduce, allreduce_max};
use crate::primitives::route::{deliver, Parcel};
use dgraph::{bellman_ford, bellman_ford_rounds};
use std::collections::HashSet;

pub fn mst(net: &mut Net, g: &WeightedGraph) -> Result<Vec<(usize, usize, u64)>, SimError> {
    minimum_spanning_tree(net, g)
}

/// Everything the two approximations share.
#[derive(Debug, Clone)]
pub struct SparseState {
    pub mst: Vec<(usize, usize, u64)>,
    pub non_tree: Vec<(usize, usize, u64)>,
    pub sigma: Vec<bool>,
    pub number: Vec<Option<usize>>,
    /// Shortcut vertices by number.
    pub shortcuts: Vec<usize>,
    pub m3: Binarized,
    pub tm: DecompositionTree,
    pub dg: DistanceGraph,
    /// Per node: nearest shortcut vertex, distance, and that vertex's
    /// number. None for a tree.
    pub nearest: Option<Vec<(usize, i64, usize)>>,
    pub apsp: ShortcutApsp,
}

fn allowed(g: &WeightedGraph, c: GraphClass) -> bool {
    c != GraphClass::Other && g.m() <= sparse_edge_bound(g.n(), 1.0)
}

/// MST, shortcut vertices, the binarized tree with its decomposition and
/// distance graph, nearest shortcut vertices, and the shortcut distances.
pub fn prepare(net: &mut Net, g: &WeightedGraph) -> Result<SparseState, AlgoError> {
    check_class(g)?;
    let n = g.n();
    let mst = minimum_spanning_tree(net, g)?;
    let in_tree: HashSet<(usize, usize)> = mst.iter().map(|&(u, v, _)| (u, v)).collect();
    let non_tree: Vec<_> = g.edges().iter().copied().filter(|&(u, v, _)| !in_tree.contains(&(u.min(v), u.max(v)))).collect();
    let mut sigma = vec![false; n];
    for &(u, v, _) in &non_tree {
        sigma[u] = true;
        sigma[v] = true;
    }
    let m3 = binarize(net, n, &mst)?;
    let tm = build_decomposition_tree(net, &m3)?;
    let dg = build_distance_graph(net, &m3, &tm)?;
    let (number, nc) = number_shortcuts(net, &m3, &sigma)?;
    let mut shortcuts = vec![0; nc];
    for v in 0..n {
        if let Some(i) = number[v] {
            shortcuts[i] = v;
        }
    }
    let nearest = nearest_shortcuts(net, &m3, &dg, &number)?;
    let apsp = shortcut_apsp(net, g, &tm, &shortcuts, &non_tree, net.config().seed)?;
    Ok(SparseState {
        mst,
        non_tree,
        sigma,
        number,
        shortcuts,
        m3,
        tm,
        dg,
        nearest,
        apsp,
    })
}

/// d̃(s, t) = min(d_M(s, t), d(s, σs) + d(σs, σt) + d(σt, t)) with σ the
/// nearest shortcut vertex and M the MST; between d and 3d.
pub fn approx_sssp(net: &mut Net, g: &WeightedGraph, s: usize) -> Result<Vec<u64>, AlgoError> {
    let st = prepare(net, g)?;
    Ok(approx_sssp_on(net, &st, s)?)
}

pub fn approx_sssp_on(net: &mut Net, st: &SparseState, s: usize) -> Result<Vec<u64>, SimError> {
    let n = st.sigma.len();
    let roots: Vec<bool> = (0..n).map(|v| v == s).collect();
    let (dm, _) = st.m3.tree.distances(net, &roots, &vec![0; n])?;
    let Some(near) = &st.nearest else {
        return Ok(dm.into_iter().map(|d| d as u64).collect());
    };
    // s announces its shortcut vertex, the distance to it and its number
    let mark = (0..n)
        .map(|v| (v == s).then(|| (near[s].0, (near[s].1 as u64, near[s].2))))
        .collect();
    let (sig, (ds, si)) = allreduce_max(net, mark)?[0].expect("s announced");
    // the representatives of {σs, x} tell every shortcut vertex x its
    // distance to σs; they learned x's id with its label
    let a = &st.apsp;
    let parcels = (0..a.ids.len())
        .filter(|&x| x != si)
        .map(|x| Parcel::new(a.reps.pair(si, x), a.ids[x], a.ids[x], a.get(si, x)))
        .collect();
    let mut from_sig = vec![0i64; n];
    for (x, d) in deliver(net, parcels)? {
        from_sig[x] = d;
    }
    let init = (0..st.dg.ov.len())
        .map(|x| {
            (x < n && st.sigma[x]).then(|| Reach {
                dist: 0,
                src: x,
                extra: if x == sig { 0 } else { from_sig[x] },
            })
        })
        .collect();
    let got = bellman_ford(net, &st.dg.ov, init, bellman_ford_rounds(n))?;
    Ok((0..n)
        .map(|t| {
            let r = got[t].expect("every node reaches a shortcut vertex");
            debug_assert_eq!(r.src, near[t].0);
            (dm[t]).min(ds as i64 + r.extra + r.dist) as u64
        })
        .collect())
}

/// D̃ = 2·max_v d(v, σv) + max over shortcut pairs of d(x, y); between D
/// and 3D. Exact on trees.
pub fn approx_diameter(net: &mut Net, g: &WeightedGraph) -> Result<u64, AlgoError> {
    let st = prepare(net, g)?;
    Ok(approx_diameter_on(net, &st)?)
}

pub fn approx_diameter_on(net: &mut Net, st: &SparseState) -> Result<u64, SimError> {
    let n = st.sigma.len();
    let Some(near) = &st.nearest else {
        return crate::tree_algos::tree_diameter_on(net, &st.m3.tree);
    };
    // every host folds the entries it represents
    let a = &st.apsp;
    let mut held = vec![0i64; n];
    for i in 0..a.ids.len() {
        for j in i + 1..a.ids.len() {
            let h = a.reps.pair(i, j);
            held[h] = held[h].max(a.get(i, j));
        }
    }
    let vals = (0..n).map(|v| (near[v].1, held[v])).collect();
    let (r, m) = allreduce(net, vals, |x, y| (x.0.max(y.0), x.1.max(y.1)))?[0];
    Ok((2 * r + m) as u64)
}

pub fn check_class(g: &WeightedGraph) -> Result<(), AlgoError> {
    require(g, "sparse", |c| allowed(g, c)).map(|_| ())
}

#[cfg(test)]
mod tests;
