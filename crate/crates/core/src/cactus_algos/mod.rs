//! Blocks, anchors, shortest path trees, SSSP and diameter on cactus graphs.
//!
//! Every cycle is run as a ring of participants (v, C), one per cycle node,
//! hosted by v or its ring successor along an outdegree-6 orientation.

use crate::error::{require, AlgoError};
use crate::graphs::{flog2, GraphClass, WeightedGraph};
use crate::line_cycle::{ring_eccentricities, source_pass};
use crate::netsim::{Net, Payload, SimError, Widths};
use crate::primitives::boruvka::minimum_spanning_tree;
use crate::primitives::clique::allreduce_max;
use crate::primitives::euler::RootedForest;
use crate::primitives::orient::orient_low_outdegree;
use crate::primitives::overlay::Overlay;
use crate::primitives::route::{deliver, Handle, Idx, Parcel};
use crate::primitives::vlist::{introduce, window, Dir, VList};
use crate::tree_algos::ForestTour;
use std::collections::{BTreeMap, HashSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeBlock {
    Bridge,
    /// Named by the non-tree edge closing the cycle, min id · n + max id.
    Cycle(u64),
}

impl Payload for EdgeBlock {
    fn bits(&self, w: &Widths) -> u32 {
        1 + 2 * w.id
    }
}

fn allowed(c: GraphClass) -> bool {
    c.within(GraphClass::Cactus)
}

fn not_cactus(why: String) -> SimError {
    SimError::Contract(format!("not a cactus: {why}"))
}

pub fn cactus_spanning_tree(net: &mut Net, g: &WeightedGraph) -> Result<Vec<(usize, usize, u64)>, AlgoError> {
    require(g, "cactus", allowed)?;
    Ok(minimum_spanning_tree(net, g)?)
}

/// Coverage of a tree edge by the fundamental cycles of the non-tree edges,
/// summed over the child's subtree. `id` is a sum modulo 2^(2·id bits);
/// `first` counts covers whose first endpoint (in tour order) lies below.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Cover {
    count: i64,
    id: u64,
    first: i64,
}

// counts stay within ± the number of non-tree edges
impl Payload for Cover {
    fn bits(&self, w: &Widths) -> u32 {
        2 * (w.id + 1) + 2 * w.id
    }
}

/// Shallowest visit of a tour range, leftmost among ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Low {
    dep: i64,
    q: Handle,
    host: usize,
}

impl Payload for Low {
    fn bits(&self, w: &Widths) -> u32 {
        w.weight + self.q.bits(w) + w.id
    }
    fn ids(&self) -> Vec<usize> {
        vec![self.host]
    }
}

/// A node's view of one cycle through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub cycle: u64,
    pub succ: usize,
    pub pred: usize,
    /// The node closest to the root of the spanning tree.
    pub anchor: bool,
}

/// The spanning tree rooted at one node, every edge labeled by its block,
/// and each node's cycles with a consistent direction per cycle.
#[derive(Debug, Clone)]
pub struct Blocks {
    pub tree: ForestTour,
    pub rooted: RootedForest,
    /// Per node, per neighbor in `g.neighbors` order.
    pub label: Vec<Vec<EdgeBlock>>,
    pub cycles: Vec<Vec<Membership>>,
}

impl Blocks {
    /// Labels in `g.edges()` order.
    pub fn edge_labels(&self, g: &WeightedGraph) -> Vec<EdgeBlock> {
        g.edges()
            .iter()
            .map(|&(u, v, _)| {
                let i = g.neighbors(u).iter().position(|&(x, _)| x == v).expect("edge");
                self.label[u][i]
            })
            .collect()
    }

    /// (cycle, anchor) pairs sorted by cycle.
    pub fn anchors(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<_> = (0..self.cycles.len())
            .flat_map(|v| self.cycles[v].iter().filter(|m| m.anchor).map(move |m| (m.cycle, v)))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Block labels by coverage counting. The LCA of each non-tree edge is the
/// shallowest tour visit between its endpoints' visits, found with window
/// tables; the edge adds +1 at both endpoints and −2 at that visit.
pub fn label_blocks(
    net: &mut Net,
    g: &WeightedGraph,
    tree: &[(usize, usize, u64)],
    root: usize,
) -> Result<Blocks, SimError> {
    let n = g.n();
    let in_tree: HashSet<(usize, usize)> = tree.iter().map(|&(u, v, _)| (u.min(v), u.max(v))).collect();
    let is_tree = |u: usize, v: usize| in_tree.contains(&(u.min(v), u.max(v)));
    let ft = ForestTour::build(net, Overlay::subgraph(g, is_tree))?;
    let roots: Vec<bool> = (0..n).map(|v| v == root).collect();
    let rf = ft.root(net, &roots)?;
    let ov = &ft.ov;
    let tour = &rf.tour;
    let l = &tour.list;
    let bits = 2 * net.widths().id;
    let mask = if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
    let cid = |u: usize, v: usize| (u.min(v) * n + u.max(v)) as u64;

    let (_, dep_vn) = rf.hop_depths_vn(net, ov)?;
    let low: Vec<Low> = (0..l.len())
        .map(|q| Low {
            dep: dep_vn[q],
            q: Handle(q),
            host: l.host[q],
        })
        .collect();
    let fwd = window(net, l, &rf.sc, Dir::Forward, low.clone(), |own, other, _| {
        if own.dep <= other.dep {
            *own
        } else {
            *other
        }
    })?;
    let bwd = window(net, l, &rf.sc, Dir::Backward, low, |own, other, _| {
        if other.dep <= own.dep {
            *other
        } else {
            *own
        }
    })?;

    // the j-th non-tree edge of x uses visit (x, j); a cactus node has at
    // least as many tree edges as non-tree edges
    let nt: Vec<Vec<usize>> = (0..n)
        .map(|x| g.neighbors(x).iter().map(|e| e.0).filter(|&y| !is_tree(x, y)).collect())
        .collect();
    for x in 0..n {
        if nt[x].len() > ov.degree(x) {
            return Err(not_cactus(format!("node {x} closes more cycles than it has tree edges")));
        }
    }
    let visit = |x: usize, j: usize| tour.vn(x, j);

    let mut parcels = Vec::new();
    for x in 0..n {
        for j in 0..nt[x].len() {
            let q = visit(x, j);
            parcels.push(Parcel::new(l.host[q], x, x, (Idx(j), rf.pos[q] as i64)));
        }
    }
    let mut my_pos: Vec<Vec<i64>> = nt.iter().map(|e| vec![0; e.len()]).collect();
    for (x, (Idx(j), p)) in deliver(net, parcels)? {
        my_pos[x][j] = p;
    }
    let slot = |x: usize, y: usize| nt[x].iter().position(|&z| z == y).expect("non-tree neighbor");
    let mut parcels = Vec::new();
    for x in 0..n {
        for (j, &y) in nt[x].iter().enumerate() {
            parcels.push(Parcel::direct(x, y, (x, my_pos[x][j])));
        }
    }
    let mut their_pos: Vec<Vec<i64>> = nt.iter().map(|e| vec![0; e.len()]).collect();
    for (y, (x, p)) in deliver(net, parcels)? {
        their_pos[y][slot(y, x)] = p;
    }
    let is_first = |x: usize, j: usize| {
        let (a, b) = (my_pos[x][j], their_pos[x][j]);
        a < b || (a == b && x < nt[x][j])
    };

    // fetch the table entry covering the range from the visit's side
    let mut parcels = Vec::new();
    let mut level: Vec<Vec<usize>> = nt.iter().map(|e| vec![0; e.len()]).collect();
    for x in 0..n {
        for j in 0..nt[x].len() {
            let k = flog2((my_pos[x][j] - their_pos[x][j]).unsigned_abs() as usize + 1);
            level[x][j] = k;
            let q = visit(x, j);
            parcels.push(Parcel::new(x, l.host[q], q, Idx(k)));
        }
    }
    deliver(net, parcels)?;
    let mut parcels = Vec::new();
    for x in 0..n {
        for j in 0..nt[x].len() {
            let q = visit(x, j);
            let k = level[x][j];
            let e = if is_first(x, j) { fwd[k][q] } else { bwd[k][q] };
            parcels.push(Parcel::new(l.host[q], x, x, (Idx(j), e)));
        }
    }
    let mut mine: Vec<Vec<Option<Low>>> = nt.iter().map(|e| vec![None; e.len()]).collect();
    for (x, (Idx(j), e)) in deliver(net, parcels)? {
        mine[x][j] = Some(e);
    }
    let mut parcels = Vec::new();
    for x in 0..n {
        for (j, &y) in nt[x].iter().enumerate() {
            parcels.push(Parcel::direct(x, y, (x, mine[x][j].expect("fetched"))));
        }
    }
    let mut lca: Vec<Vec<Option<Low>>> = nt.iter().map(|e| vec![None; e.len()]).collect();
    for (y, (x, theirs)) in deliver(net, parcels)? {
        let j = slot(y, x);
        let own = mine[y][j].expect("fetched");
        let (f, b) = if is_first(y, j) { (own, theirs) } else { (theirs, own) };
        lca[y][j] = Some(if f.dep <= b.dep { f } else { b });
    }

    // contributions: +1 at both endpoints, −2 at the LCA visit
    let mut parcels = Vec::new();
    for x in 0..n {
        for (j, &y) in nt[x].iter().enumerate() {
            let id = cid(x, y);
            let q = visit(x, j);
            let first = is_first(x, j);
            let add = Cover {
                count: 1,
                id,
                first: first as i64,
            };
            parcels.push(Parcel::new(x, l.host[q], q, add));
            if first {
                let low = lca[x][j].expect("computed");
                let back = Cover {
                    count: -2,
                    id: id.wrapping_mul(2).wrapping_neg() & mask,
                    first: -1,
                };
                parcels.push(Parcel::new(x, low.host, low.q.0, back));
            }
        }
    }
    let add = |a: &Cover, b: &Cover| Cover {
        count: a.count + b.count,
        id: a.id.wrapping_add(b.id) & mask,
        first: a.first + b.first,
    };
    let sub = |a: &Cover, b: &Cover| Cover {
        count: a.count - b.count,
        id: a.id.wrapping_sub(b.id) & mask,
        first: a.first - b.first,
    };
    let mut placed = vec![Cover::default(); l.len()];
    for (q, c) in deliver(net, parcels)? {
        placed[q] = add(&placed[q], &c);
    }
    let cover = rf.interval_sums(net, ov, placed, add, sub)?;
    for x in 0..n {
        if rf.parent[x].is_some() && !(0..=1).contains(&cover[x].count) {
            return Err(not_cactus(format!("the parent edge of {x} lies on {} cycles", cover[x].count)));
        }
    }

    // children report their parent edge's cover
    let as_label = |c: &Cover| if c.count == 1 { EdgeBlock::Cycle(c.id) } else { EdgeBlock::Bridge };
    let parcels = (0..n)
        .filter_map(|x| rf.parent[x].map(|p| Parcel::direct(x, p, (x, (as_label(&cover[x]), cover[x].first == 1)))))
        .collect();
    let mut child_cover: Vec<BTreeMap<usize, Cover>> = vec![BTreeMap::new(); n];
    for (p, (c, (b, first))) in deliver(net, parcels)? {
        let (count, id) = match b {
            EdgeBlock::Cycle(id) => (1, id),
            EdgeBlock::Bridge => (0, 0),
        };
        let first = first as i64;
        child_cover[p].insert(c, Cover { count, id, first });
    }

    let mut label = Vec::with_capacity(n);
    let mut cycles = Vec::with_capacity(n);
    for x in 0..n {
        let lab: Vec<EdgeBlock> = g
            .neighbors(x)
            .iter()
            .map(|&(y, _)| {
                if !is_tree(x, y) {
                    EdgeBlock::Cycle(cid(x, y))
                } else if rf.parent[x] == Some(y) {
                    as_label(&cover[x])
                } else {
                    as_label(&child_cover[x][&y])
                }
            })
            .collect();
        let mut by_cycle: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, &(y, _)) in g.neighbors(x).iter().enumerate() {
            if let EdgeBlock::Cycle(c) = lab[i] {
                by_cycle.entry(c).or_default().push(y);
            }
        }
        let mut mem = Vec::with_capacity(by_cycle.len());
        for (c, ys) in by_cycle {
            let [a, b] = ys[..] else {
                return Err(not_cactus(format!("node {x} has {} edges on cycle {c}", ys.len())));
            };
            let (succ, pred, anchor) = match rf.parent[x] {
                Some(p) if a == p || b == p => {
                    let other = if a == p { b } else { a };
                    if cover[x].first == 1 {
                        (other, p, false)
                    } else {
                        (p, other, false)
                    }
                }
                _ => {
                    // top of the cycle: head toward the first endpoint's side
                    let toward_first = |y: usize| child_cover[x].get(&y).is_some_and(|c| c.first == 1);
                    let down = |y: usize| child_cover[x].contains_key(&y);
                    if toward_first(a) || (!toward_first(b) && !down(a)) {
                        (a, b, true)
                    } else {
                        (b, a, true)
                    }
                }
            };
            mem.push(Membership {
                cycle: c,
                succ,
                pred,
                anchor,
            });
        }
        label.push(lab);
        cycles.push(mem);
    }
    Ok(Blocks {
        tree: ft,
        rooted: rf,
        label,
        cycles,
    })
}

pub fn cactus_blocks(net: &mut Net, g: &WeightedGraph, tree: &[(usize, usize, u64)]) -> Result<Vec<EdgeBlock>, AlgoError> {
    require(g, "cactus", allowed)?;
    let root = allreduce_max(net, (0..g.n()).collect())?[0];
    Ok(label_blocks(net, g, tree, root)?.edge_labels(g))
}

/// Anchors of every cycle for source s: with the spanning tree rooted at
/// s, every path from s into a cycle enters through the cycle node of
/// least depth, the one whose parent edge is off the cycle.
pub fn cactus_anchors(
    net: &mut Net,
    g: &WeightedGraph,
    tree: &[(usize, usize, u64)],
    s: usize,
) -> Result<Vec<(u64, usize)>, AlgoError> {
    require(g, "cactus", allowed)?;
    Ok(label_blocks(net, g, tree, s)?.anchors())
}

/// All cycles as rings of participants, directed consistently.
#[derive(Debug, Clone)]
pub struct CycleRings {
    pub list: VList,
    pub owner: Vec<usize>,
    pub cycle: Vec<u64>,
    pub anchor: Vec<bool>,
    /// Per node: its participants, as in `Blocks::cycles`.
    pub of: Vec<Vec<usize>>,
}

/// Participant hosting: (v, C) sits at v when the edge to its ring
/// successor points out of v, else at the successor; a host carries at
/// most two per out-edge. One round to learn the neighbors' hosts, one to
/// hand over the state.
pub fn cycle_rings(net: &mut Net, g: &WeightedGraph, blocks: &Blocks) -> Result<CycleRings, SimError> {
    let n = g.n();
    let ov = Overlay::of_graph(g);
    let o = orient_low_outdegree(net, &ov, 2)?;
    let mut owner = Vec::new();
    let mut cycle = Vec::new();
    let mut anchor = Vec::new();
    let mut host = Vec::new();
    let mut of = vec![Vec::new(); n];
    let mut at = BTreeMap::new();
    for v in 0..n {
        for m in &blocks.cycles[v] {
            at.insert((v, m.cycle), owner.len());
            of[v].push(owner.len());
            owner.push(v);
            cycle.push(m.cycle);
            anchor.push(m.anchor);
            host.push(if o.points_out(&ov, v, m.succ) { v } else { m.succ });
        }
    }
    let mut parcels = Vec::new();
    for v in 0..n {
        for (m, &x) in blocks.cycles[v].iter().zip(&of[v]) {
            parcels.push(Parcel::direct(v, m.pred, (v, host[x])));
            parcels.push(Parcel::direct(v, m.succ, (v, host[x])));
        }
    }
    deliver(net, parcels)?;
    let mut succ = vec![None; owner.len()];
    let mut wsucc = vec![0i64; owner.len()];
    let mut parcels = Vec::new();
    for v in 0..n {
        for (m, &x) in blocks.cycles[v].iter().zip(&of[v]) {
            let y = at[&(m.succ, m.cycle)];
            succ[x] = Some(y);
            wsucc[x] = g.weight(v, m.succ).expect("ring neighbors are adjacent") as i64;
            let state = ((host[y], host[at[&(m.pred, m.cycle)]]), wsucc[x], m.anchor);
            parcels.push(Parcel::new(v, host[x], x, state));
        }
    }
    deliver(net, parcels)?;
    for x in 0..owner.len() {
        let y = succ[x].expect("rings are closed");
        if owner[y] == owner[x] || cycle[y] != cycle[x] {
            return Err(SimError::Contract(format!("participant {x} has a bad successor")));
        }
    }
    Ok(CycleRings {
        list: VList::from_succ(host, succ, wsucc),
        owner,
        cycle,
        anchor,
        of,
    })
}

/// The shortest path tree S_G: every cycle drops the edge between its
/// anchor's two farthest nodes.
#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    pub blocks: Blocks,
    pub rings: CycleRings,
    pub tree: ForestTour,
    pub source: usize,
}

impl ShortestPathTree {
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        self.tree.ov.edges()
    }
}

pub fn shortest_path_tree(net: &mut Net, g: &WeightedGraph, s: usize) -> Result<ShortestPathTree, SimError> {
    let n = g.n();
    let st = minimum_spanning_tree(net, g)?;
    let blocks = label_blocks(net, g, &st, s)?;
    let rings = cycle_rings(net, g, &blocks)?;
    let mut removed: HashSet<(usize, usize)> = HashSet::new();
    if !rings.list.is_empty() {
        let sc = introduce(net, &rings.list, n)?;
        let pass = source_pass(net, &rings.list, &sc, &rings.anchor)?;
        let l = &rings.list;
        let parcels = (0..l.len())
            .filter(|&x| pass.far[x] == x)
            .map(|x| Parcel::new(l.host[x], rings.owner[x], rings.owner[x], Handle(x)))
            .collect();
        let mut parcels2 = Vec::new();
        for (v, Handle(x)) in deliver(net, parcels)? {
            let u = rings.owner[l.succ[x].expect("closed ring")];
            removed.insert((v.min(u), v.max(u)));
            parcels2.push(Parcel::direct(v, u, ()));
        }
        deliver(net, parcels2)?;
    }
    let tree = ForestTour::build(net, Overlay::subgraph(g, |u, v| !removed.contains(&(u.min(v), u.max(v)))))?;
    Ok(ShortestPathTree {
        blocks,
        rings,
        tree,
        source: s,
    })
}

pub fn cactus_spt(net: &mut Net, g: &WeightedGraph, s: usize) -> Result<Vec<(usize, usize, u64)>, AlgoError> {
    require(g, "cactus", allowed)?;
    Ok(shortest_path_tree(net, g, s)?.edges())
}

pub fn cactus_sssp(net: &mut Net, g: &WeightedGraph, s: usize) -> Result<Vec<u64>, AlgoError> {
    require(g, "cactus", allowed)?;
    let n = g.n();
    let spt = shortest_path_tree(net, g, s)?;
    let roots: Vec<bool> = (0..n).map(|v| v == s).collect();
    let (d, _) = spt.tree.distances(net, &roots, &vec![0; n])?;
    Ok(d.into_iter().map(|x| x as u64).collect())
}

/// The larger of the best path turning at a node of S_G and the diameters
/// of the cycle pseudotrees, where a non-anchor cycle node carries a
/// pendant as long as its deepest branch off the cycle.
pub fn cactus_diameter(net: &mut Net, g: &WeightedGraph) -> Result<u64, AlgoError> {
    require(g, "cactus", allowed)?;
    let n = g.n();
    if n == 1 {
        return Ok(0);
    }
    let s = allreduce_max(net, (0..n).collect())?[0];
    let spt = shortest_path_tree(net, g, s)?;
    let ov = &spt.tree.ov;
    let roots: Vec<bool> = (0..n).map(|v| v == s).collect();
    let rf = spt.tree.root(net, &roots)?;
    let (d, d_vn) = rf.distances(net, ov, &vec![0; n])?;
    let h = rf.heights(net, ov, &d, &d_vn)?;

    // children report (h + w, block of the edge); a node pairs branches
    // from different blocks only, since two children on one cycle are
    // joined more cheaply around that cycle
    let block_of = |v: usize, u: usize| {
        let i = g.neighbors(v).iter().position(|&(x, _)| x == u).expect("tree edges are graph edges");
        spt.blocks.label[v][i]
    };
    let parcels = (0..n)
        .filter_map(|x| {
            let p = rf.parent[x]?;
            let w = g.weight(x, p).expect("edge") as i64;
            Some(Parcel::direct(x, p, ((h[x] + w, Handle(x)), block_of(x, p))))
        })
        .collect();
    let mut branch: Vec<BTreeMap<(EdgeBlock, usize), i64>> = vec![BTreeMap::new(); n];
    for (p, ((v, Handle(c)), b)) in deliver(net, parcels)? {
        let group = match b {
            EdgeBlock::Bridge => (b, c),
            EdgeBlock::Cycle(_) => (b, 0),
        };
        let e = branch[p].entry(group).or_insert(v);
        *e = (*e).max(v);
    }
    let mut cand = vec![0i64; n];
    let mut pendant = vec![0i64; n];
    for v in 0..n {
        let mut top: Vec<i64> = branch[v].values().copied().collect();
        top.sort_unstable_by(|a, b| b.cmp(a));
        cand[v] = top.iter().take(2).sum();
        let up = rf.parent[v].map(|q| block_of(v, q));
        pendant[v] = branch[v]
            .iter()
            .filter(|((b, _), _)| Some(*b) != up || *b == EdgeBlock::Bridge)
            .map(|(_, &x)| x)
            .max()
            .unwrap_or(0);
    }

    let rings = &spt.rings;
    if !rings.list.is_empty() {
        let l = &rings.list;
        let parcels = (0..l.len())
            .map(|x| {
                let h = if rings.anchor[x] { 0 } else { pendant[rings.owner[x]] };
                Parcel::new(rings.owner[x], l.host[x], x, h)
            })
            .collect();
        let mut hp = vec![0i64; l.len()];
        for (x, v) in deliver(net, parcels)? {
            hp[x] = v;
        }
        let sc = introduce(net, l, n)?;
        let key: Vec<u64> = rings.owner.iter().map(|&v| v as u64).collect();
        let re = ring_eccentricities(net, l, &sc, &key, &hp)?;
        // hosts fold their participants' candidates into their own entry
        for x in 0..l.len() {
            let c = if re.ecc[x] > hp[x] { re.ecc[x] + hp[x] } else { hp[x] };
            let hst = l.host[x];
            cand[hst] = cand[hst].max(c);
        }
    }
    Ok(allreduce_max(net, cand)?[0] as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, oracle_blocks, oracle_diameter, oracle_sssp, BlockLabel, GenParams};
    use crate::netsim::SimConfig;
    use std::collections::HashMap;

    fn net(g: &WeightedGraph) -> Net {
        Net::new(g, &SimConfig::default()).unwrap()
    }

    /// Triangles a,b,c and c,d,e sharing c.
    fn cc7() -> WeightedGraph {
        // a=0 b=1 c=2 d=3 e=4
        WeightedGraph::new(5, &[(0, 1, 1), (1, 2, 2), (0, 2, 3), (2, 3, 3), (3, 4, 3), (2, 4, 3)]).unwrap()
    }

    fn same_partition(a: &[EdgeBlock], b: &[BlockLabel]) -> bool {
        let mut ab: HashMap<EdgeBlock, BlockLabel> = HashMap::new();
        let mut ba: HashMap<BlockLabel, EdgeBlock> = HashMap::new();
        a.iter().zip(b).all(|(&x, &y)| {
            (x == EdgeBlock::Bridge) == (y == BlockLabel::Bridge)
                && *ab.entry(x).or_insert(y) == y
                && *ba.entry(y).or_insert(x) == x
        })
    }

    #[test]
    fn spanning_tree_and_blocks_on_fixtures() {
        let g = cc7();
        let t = cactus_spanning_tree(&mut net(&g), &g).unwrap();
        assert_eq!(t.len(), 4);
        let b = cactus_blocks(&mut net(&g), &g, &t).unwrap();
        let distinct: HashSet<_> = b.iter().collect();
        assert_eq!(distinct.len(), 2);
        assert!(!b.contains(&EdgeBlock::Bridge));
        assert!(same_partition(&b, &oracle_blocks(&g)));

        let c4 = WeightedGraph::new(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)]).unwrap();
        let t = cactus_spanning_tree(&mut net(&c4), &c4).unwrap();
        assert_eq!(t.len(), 3);
        let b = cactus_blocks(&mut net(&c4), &c4, &t).unwrap();
        assert!(b.iter().all(|&x| x == b[0] && x != EdgeBlock::Bridge));

        let t4 = WeightedGraph::new(4, &[(0, 1, 5), (1, 2, 2), (1, 3, 7)]).unwrap();
        let t = cactus_spanning_tree(&mut net(&t4), &t4).unwrap();
        assert_eq!(t, t4.edges().to_vec());
        assert!(cactus_blocks(&mut net(&t4), &t4, &t).unwrap().iter().all(|&x| x == EdgeBlock::Bridge));
    }

    #[test]
    fn anchors_on_fixture() {
        let g = cc7();
        let t = cactus_spanning_tree(&mut net(&g), &g).unwrap();
        let a = cactus_anchors(&mut net(&g), &g, &t, 0).unwrap();
        let mut got: Vec<usize> = a.iter().map(|x| x.1).collect();
        got.sort_unstable();
        assert_eq!(got, vec![0, 2]);
        let a = cactus_anchors(&mut net(&g), &g, &t, 3).unwrap();
        let mut got: Vec<usize> = a.iter().map(|x| x.1).collect();
        got.sort_unstable();
        assert_eq!(got, vec![2, 3]);
    }

    #[test]
    fn sssp_and_diameter_on_fixtures() {
        let g = cc7();
        let d = cactus_sssp(&mut net(&g), &g, 0).unwrap();
        assert_eq!(d, oracle_sssp(&g, 0));
        assert_eq!(d[4], 6);
        assert_eq!(cactus_diameter(&mut net(&g), &g).unwrap(), 6);
        let c4 = WeightedGraph::new(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)]).unwrap();
        assert_eq!(cactus_sssp(&mut net(&c4), &c4, 0).unwrap(), vec![0, 1, 3, 4]);
        assert_eq!(cactus_diameter(&mut net(&c4), &c4).unwrap(), 5);
        let t4 = WeightedGraph::new(4, &[(0, 1, 5), (1, 2, 2), (1, 3, 7)]).unwrap();
        assert_eq!(cactus_diameter(&mut net(&t4), &t4).unwrap(), 12);
        let c6: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6, 1)).collect();
        let c6 = WeightedGraph::new(6, &c6).unwrap();
        let spt = cactus_spt(&mut net(&c6), &c6, 0).unwrap();
        assert_eq!(spt.len(), 5);
        assert_eq!(cactus_sssp(&mut net(&c6), &c6, 0).unwrap(), vec![0, 1, 2, 3, 2, 1]);
    }

    #[test]
    fn rejects_non_cactus() {
        let k4 = WeightedGraph::new(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        assert!(matches!(cactus_sssp(&mut net(&k4), &k4, 0), Err(AlgoError::WrongClass { .. })));
        // the distributed check trips on its own when handed a non-cactus
        let t = minimum_spanning_tree(&mut net(&k4), &k4).unwrap();
        assert!(label_blocks(&mut net(&k4), &k4, &t, 3).is_err());
    }

    #[test]
    fn generated_cacti_match_oracles() {
        for seed in 0..30u64 {
            let n = 5 + (seed as usize * 83) % 500;
            let params = if seed % 5 == 0 { GenParams::weights(1, 1) } else { GenParams::default() };
            let g = generate(GraphClass::Cactus, n, &params, seed).unwrap();
            let s = (seed as usize * 31) % n;
            let mut nt = net(&g);
            let t = minimum_spanning_tree(&mut nt, &g).unwrap();
            let b = label_blocks(&mut nt, &g, &t, s).unwrap();
            assert!(same_partition(&b.edge_labels(&g), &oracle_blocks(&g)), "seed {seed}");
            let mut nt = net(&g);
            assert_eq!(cactus_sssp(&mut nt, &g, s).unwrap(), oracle_sssp(&g, s), "seed {seed}");
            assert!(nt.metrics().overflow_events.is_empty());
            assert_eq!(cactus_diameter(&mut net(&g), &g).unwrap(), oracle_diameter(&g), "seed {seed}");
        }
    }
}
