//! Euler tours of overlay graphs with virtual nodes redistributed along a
//! low-outdegree orientation, and the forest computations built on them.
//!
//! Vertex x of degree d owns virtual nodes (x, 0..d): (x, i) is the visit
//! that arrives from the i-th neighbor and leaves toward neighbor i + 1 mod d.
//! (x, i) is hosted by x if the edge to its i-th neighbor points out of x,
//! otherwise by that neighbor.

use super::orient::Orientation;
use super::overlay::Overlay;
use super::route::{deliver, Handle, Idx, Parcel};
use super::vlist::{introduce, sweep, window, Dir, Shortcuts, VList};
use crate::graphs::flog2;
use crate::netsim::{Net, Payload, SimError, Widths};

#[derive(Debug, Clone)]
pub struct Tour {
    /// Successor links between virtual nodes; one ring per component
    /// until cut.
    pub list: VList,
    pub owner: Vec<usize>,
    pub index: Vec<usize>,
    /// First virtual node of each vertex; vertex x owns max(deg x, 1).
    pub offset: Vec<usize>,
}

impl Tour {
    pub fn vn(&self, x: usize, i: usize) -> usize {
        self.offset[x] + i
    }

    pub fn count(&self, x: usize) -> usize {
        self.offset.get(x + 1).copied().unwrap_or(self.list.len()) - self.offset[x]
    }

    /// Largest number of virtual nodes simulated by one real host.
    pub fn max_hosted(&self) -> usize {
        let mut per = std::collections::HashMap::new();
        for &h in &self.list.host {
            *per.entry(h).or_insert(0usize) += 1;
        }
        per.values().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
struct VnState {
    succ: Handle,
    succ_host: usize,
    next_host: usize,
    w_succ: i64,
}

impl Payload for VnState {
    fn bits(&self, w: &Widths) -> u32 {
        self.succ.bits(w) + 2 * w.id + self.w_succ.bits(w)
    }
    fn ids(&self) -> Vec<usize> {
        vec![self.succ_host, self.next_host]
    }
}

/// Three rounds: neighbor-index exchange, hand-over of the successor link
/// to the hosts of moved virtual nodes, predecessor introductions.
pub fn build_tour(net: &mut Net, ov: &Overlay, orient: &Orientation) -> Result<Tour, SimError> {
    let p = ov.len();
    let mut offset = Vec::with_capacity(p);
    let mut total = 0;
    for x in 0..p {
        offset.push(total);
        total += ov.degree(x).max(1);
    }
    let mut owner = vec![0; total];
    let mut index = vec![0; total];
    for x in 0..p {
        for i in 0..ov.degree(x).max(1) {
            owner[offset[x] + i] = x;
            index[offset[x] + i] = i;
        }
    }

    let mut parcels = Vec::new();
    for x in 0..p {
        for (i, &(y, _)) in ov.adj[x].iter().enumerate() {
            parcels.push(Parcel::new(ov.host[x], ov.host[y], y, (Handle(x), Idx(i))));
        }
    }
    // back[x][j]: position of x in the list of its j-th neighbor
    let mut back: Vec<Vec<usize>> = (0..p).map(|x| vec![0; ov.degree(x)]).collect();
    for (y, (Handle(x), Idx(i))) in deliver(net, parcels)? {
        let j = ov.index_of(y, x).expect("message over an overlay edge");
        back[y][j] = i;
    }

    let host_of = |x: usize, i: usize| -> usize {
        match ov.adj[x].get(i) {
            Some(&(y, _)) if !orient.points_out(ov, x, y) => ov.host[y],
            _ => ov.host[x],
        }
    };
    let host: Vec<usize> = (0..total).map(|q| host_of(owner[q], index[q])).collect();
    let mut succ = vec![None; total];
    let mut pred = vec![None; total];
    let mut wsucc = vec![0i64; total];
    let mut wpred = vec![0i64; total];
    for x in 0..p {
        let d = ov.degree(x);
        for i in 0..d {
            let q = offset[x] + i;
            let (z, wz) = ov.adj[x][(i + 1) % d];
            succ[q] = Some(offset[z] + back[x][(i + 1) % d]);
            wsucc[q] = wz as i64;
            let (y, wy) = ov.adj[x][i];
            let dy = ov.degree(y);
            pred[q] = Some(offset[y] + (back[x][i] + dy - 1) % dy);
            wpred[q] = wy as i64;
        }
    }

    let mut parcels = Vec::new();
    for q in 0..total {
        let x = owner[q];
        if host[q] != ov.host[x] {
            let s = succ[q].unwrap();
            let d = ov.degree(x);
            parcels.push(Parcel::new(
                ov.host[x],
                host[q],
                q,
                VnState {
                    succ: Handle(s),
                    succ_host: host[s],
                    next_host: host_of(x, (index[q] + 1) % d),
                    w_succ: wsucc[q],
                },
            ));
        }
    }
    deliver(net, parcels)?;

    // the predecessor's host introduces itself with the link weight
    let parcels = (0..total)
        .filter_map(|q| succ[q].map(|s| Parcel::new(host[q], host[s], s, (Handle(q), host[q], wsucc[q]))))
        .collect();
    deliver(net, parcels)?;

    Ok(Tour {
        list: VList {
            host,
            succ,
            pred,
            wsucc,
            wpred,
        },
        owner,
        index,
        offset,
    })
}

/// Every vertex learns the fold of the values in its component, for an
/// idempotent `op` (MIN, MAX and the like). Runs on the unrooted tour rings.
pub fn component_extreme<V: Payload>(
    net: &mut Net,
    ov: &Overlay,
    tour: &Tour,
    sc: &Shortcuts,
    vals: &[V],
    op: impl Fn(&V, &V) -> V,
) -> Result<Vec<V>, SimError> {
    let placed = place_at_first(net, ov, tour, |x| Some(vals[x].clone()))?;
    let table = window(net, &tour.list, sc, Dir::Forward, placed, |a, b, _| match (a, b) {
        (Some(a), Some(b)) => Some(op(a, b)),
        (a, None) => a.clone(),
        (None, b) => b.clone(),
    })?;
    let top = table.last().unwrap();
    let got = report_first(net, ov, tour, top)?;
    Ok(got.into_iter().map(|v| v.expect("every ring holds a value")).collect())
}

/// Owners hand a value to the host of their virtual node 0. One round.
fn place_at_first<V: Payload>(
    net: &mut Net,
    ov: &Overlay,
    tour: &Tour,
    val: impl Fn(usize) -> Option<V>,
) -> Result<Vec<Option<V>>, SimError> {
    let mut parcels = Vec::new();
    for x in 0..ov.len() {
        if let Some(v) = val(x) {
            let q = tour.vn(x, 0);
            parcels.push(Parcel::new(ov.host[x], tour.list.host[q], q, v));
        }
    }
    let mut out = vec![None; tour.list.len()];
    for (q, v) in deliver(net, parcels)? {
        out[q] = Some(v);
    }
    Ok(out)
}

/// Hosts of virtual node 0 report its value to the owner. One round.
fn report_first<V: Payload>(net: &mut Net, ov: &Overlay, tour: &Tour, vals: &[V]) -> Result<Vec<V>, SimError> {
    let parcels = (0..ov.len())
        .map(|x| {
            let q = tour.vn(x, 0);
            Parcel::new(tour.list.host[q], ov.host[x], x, vals[q].clone())
        })
        .collect();
    Ok(deliver(net, parcels)?.into_iter().map(|(_, v)| v).collect())
}

/// Ring shortcuts over a fresh tour.
pub fn ring_shortcuts(net: &mut Net, tour: &Tour) -> Result<Shortcuts, SimError> {
    introduce(net, &tour.list, tour.list.len())
}

/// Euler tour cut into one path per component, with parent pointers and
/// the tour interval of every vertex.
#[derive(Debug, Clone)]
pub struct RootedForest {
    pub tour: Tour,
    pub sc: Shortcuts,
    /// Position of each virtual node on its component's path.
    pub pos: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    /// Per vertex: index of the visit arriving from the parent (the root's
    /// first visit for roots).
    pub enter: Vec<usize>,
    /// Per non-root vertex: index of the visit leaving toward the parent.
    pub leave: Vec<Option<usize>>,
    /// Per non-root vertex: tour positions of its arrival and leaving visits.
    pub span: Vec<Option<(usize, usize)>>,
    pub head: Vec<bool>,
    pub tail: Vec<bool>,
}

#[derive(Debug, Clone)]
enum RootNote {
    /// The interval [at, back] of the vertex travels along for range queries.
    Parent { idx: Idx, at: i64, back: i64 },
    Root,
    Leave,
}

impl Payload for RootNote {
    fn bits(&self, w: &Widths) -> u32 {
        2 + match self {
            RootNote::Parent { .. } => w.idx + 2 * w.weight,
            _ => 0,
        }
    }
}

impl RootedForest {
    pub fn is_root(&self, x: usize) -> bool {
        self.parent[x].is_none()
    }

    /// Children of x in neighbor order.
    pub fn children(&self, ov: &Overlay, x: usize) -> Vec<usize> {
        ov.adj[x]
            .iter()
            .map(|e| e.0)
            .filter(|&y| Some(y) != self.parent[x])
            .collect()
    }

    /// Signed tree distances from the roots, seeded with `seed[root]`.
    /// Returns per-vertex and per-virtual-node values.
    pub fn distances(&self, net: &mut Net, ov: &Overlay, seed: &[i64]) -> Result<(Vec<i64>, Vec<i64>), SimError> {
        let list = self.signed_list(net)?;
        let sc = introduce(net, &list, list.len())?;
        self.sweep_from_heads(net, ov, &list, &sc, seed, |v, w, _| v + w)
    }

    /// Hop depths in the forest (unit weights) from the roots.
    pub fn hop_depths(&self, net: &mut Net, ov: &Overlay) -> Result<Vec<i64>, SimError> {
        Ok(self.hop_depths_vn(net, ov)?.0)
    }

    /// Hop depths per vertex and per virtual node; every visit of x has
    /// the depth of x.
    pub fn hop_depths_vn(&self, net: &mut Net, ov: &Overlay) -> Result<(Vec<i64>, Vec<i64>), SimError> {
        let list = self.tour.list.reweight(
            net,
            (0..self.tour.list.len())
                .map(|q| if self.is_leave(q) { -1 } else { 1 })
                .collect(),
        )?;
        let sc = introduce(net, &list, list.len())?;
        let seed = vec![0; ov.len()];
        self.sweep_from_heads(net, ov, &list, &sc, &seed, |v, w, _| v + w)
    }

    fn is_leave(&self, q: usize) -> bool {
        let x = self.tour.owner[q];
        self.leave[x] == Some(self.tour.index[q])
    }

    /// Link weights: + toward a child, − toward the parent. One round.
    fn signed_list(&self, net: &mut Net) -> Result<VList, SimError> {
        let l = &self.tour.list;
        let w = (0..l.len())
            .map(|q| if self.is_leave(q) { -l.wsucc[q] } else { l.wsucc[q] })
            .collect();
        l.reweight(net, w)
    }

    /// Seeds go from each root to the host of its head, then sweep forward
    /// and the arrival visit reports to its owner.
    fn sweep_from_heads(
        &self,
        net: &mut Net,
        ov: &Overlay,
        list: &VList,
        sc: &Shortcuts,
        seed: &[i64],
        ext: impl Fn(&i64, i64, usize) -> i64,
    ) -> Result<(Vec<i64>, Vec<i64>), SimError> {
        let mut parcels = Vec::new();
        for x in (0..ov.len()).filter(|&x| self.is_root(x)) {
            let q = self.tour.vn(x, self.enter[x]);
            parcels.push(Parcel::new(ov.host[x], list.host[q], q, seed[x]));
        }
        let mut init = vec![None; list.len()];
        for (q, v) in deliver(net, parcels)? {
            init[q] = Some(v);
        }
        let got = sweep(net, list, sc, Dir::Forward, init, ext, |a, b| a < b)?;
        let per_vn: Vec<i64> = got.into_iter().map(|v| v.expect("tour paths are connected")).collect();
        let per_vertex = self.report_enter(net, ov, &per_vn)?;
        Ok((per_vertex, per_vn))
    }

    /// The arrival visit of every vertex reports its value to the owner. One round.
    pub fn report_enter<V: Payload>(&self, net: &mut Net, ov: &Overlay, per_vn: &[V]) -> Result<Vec<V>, SimError> {
        let parcels = (0..ov.len())
            .map(|x| {
                let q = self.tour.vn(x, self.enter[x]);
                Parcel::new(self.tour.list.host[q], ov.host[x], x, per_vn[q].clone())
            })
            .collect();
        Ok(deliver(net, parcels)?.into_iter().map(|(_, v)| v).collect())
    }

    /// Weighted heights h(v) = max over the subtree of d(u) − d(v), from
    /// per-virtual-node depths `d` (as returned by `distances`).
    pub fn heights(&self, net: &mut Net, ov: &Overlay, d_vertex: &[i64], d_vn: &[i64]) -> Result<Vec<i64>, SimError> {
        let l = &self.tour.list;
        let fwd = window(net, l, &self.sc, Dir::Forward, d_vn.to_vec(), |a, b, _| *a.max(b))?;
        let bwd = window(net, l, &self.sc, Dir::Backward, d_vn.to_vec(), |a, b, _| *a.max(b))?;
        let maxes = self.range_query(net, ov, &fwd, &bwd, |a, b| *a.max(b))?;
        Ok((0..ov.len()).map(|x| maxes[x] - d_vertex[x]).collect())
    }

    /// Fold over each vertex's tour interval from forward and backward
    /// window tables of an idempotent operation. Two rounds: the arrival
    /// visit sends the level to the leaving visit, then both report.
    pub fn range_query<V: Payload>(
        &self,
        net: &mut Net,
        ov: &Overlay,
        fwd: &[Vec<V>],
        bwd: &[Vec<V>],
        op: impl Fn(&V, &V) -> V,
    ) -> Result<Vec<V>, SimError> {
        let top = fwd.len() - 1;
        let mut level = vec![top; ov.len()];
        let mut parcels = Vec::new();
        for x in 0..ov.len() {
            if let (Some(li), Some((at, back))) = (self.leave[x], self.span[x]) {
                let (a, b) = (self.tour.vn(x, self.enter[x]), self.tour.vn(x, li));
                let k = flog2(back - at + 1);
                level[x] = k;
                parcels.push(Parcel::new(self.tour.list.host[a], self.tour.list.host[b], b, Idx(k)));
            }
        }
        deliver(net, parcels)?;
        let mut parcels = Vec::new();
        for x in 0..ov.len() {
            let a = self.tour.vn(x, self.enter[x]);
            let k = level[x];
            parcels.push(Parcel::new(self.tour.list.host[a], ov.host[x], x, fwd[k][a].clone()));
            if let Some(li) = self.leave[x] {
                let b = self.tour.vn(x, li);
                parcels.push(Parcel::new(self.tour.list.host[b], ov.host[x], x, bwd[k][b].clone()));
            }
        }
        let mut out: Vec<Option<V>> = vec![None; ov.len()];
        for (x, v) in deliver(net, parcels)? {
            out[x] = Some(match &out[x] {
                None => v,
                Some(c) => op(c, &v),
            });
        }
        Ok(out.into_iter().map(Option::unwrap).collect())
    }

    /// Per vertex: the sum of `vals` over its subtree and over its component.
    pub fn subtree_sums(&self, net: &mut Net, ov: &Overlay, vals: &[i64]) -> Result<(Vec<i64>, Vec<i64>), SimError> {
        let l = &self.tour.list;
        let parcels = (0..ov.len())
            .map(|x| {
                let q = self.tour.vn(x, self.enter[x]);
                Parcel::new(ov.host[x], l.host[q], q, vals[x])
            })
            .collect();
        let mut placed = vec![0i64; l.len()];
        for (q, v) in deliver(net, parcels)? {
            placed[q] = v;
        }
        let sub = self.interval_sums(net, ov, placed, |a, b| a + b, |a, b| a - b)?;
        let (total, _) = self.sweep_from_heads(net, ov, l, &self.sc, &sub, |v, _, _| *v)?;
        Ok((sub, total))
    }

    /// Per vertex: the fold of per-virtual-node values over its tour
    /// interval, for a group (`add` with inverse `sub`). A value placed at
    /// any visit of x counts toward x and its ancestors only.
    pub fn interval_sums<V: Payload>(
        &self,
        net: &mut Net,
        ov: &Overlay,
        placed: Vec<V>,
        add: impl Fn(&V, &V) -> V,
        sub: impl Fn(&V, &V) -> V,
    ) -> Result<Vec<V>, SimError> {
        let l = &self.tour.list;
        let prefix = window(net, l, &self.sc, Dir::Backward, placed.clone(), |a, b, _| add(a, b))?;
        let prefix = prefix.last().unwrap();

        // interval ends report prefixes; tails report component totals to the root
        let mut parcels = Vec::new();
        for x in 0..ov.len() {
            let a = self.tour.vn(x, self.enter[x]);
            if let Some(li) = self.leave[x] {
                let b = self.tour.vn(x, li);
                parcels.push(Parcel::new(l.host[a], ov.host[x], x, (false, sub(&prefix[a], &placed[a]))));
                parcels.push(Parcel::new(l.host[b], ov.host[x], x, (true, prefix[b].clone())));
            } else if ov.degree(x) == 0 {
                // an isolated root is its own tail
                parcels.push(Parcel::new(l.host[a], ov.host[x], x, (true, prefix[a].clone())));
            }
        }
        for q in (0..l.len()).filter(|&q| self.tail[q]) {
            if ov.degree(self.tour.owner[q]) > 0 {
                let r = self.root_of_tail(ov, q);
                parcels.push(Parcel::new(l.host[q], ov.host[r], r, (true, prefix[q].clone())));
            }
        }
        let mut before: Vec<Option<V>> = vec![None; ov.len()];
        let mut upto: Vec<Option<V>> = vec![None; ov.len()];
        for (x, (is_end, v)) in deliver(net, parcels)? {
            if is_end {
                upto[x] = Some(v);
            } else {
                before[x] = Some(v);
            }
        }
        Ok((0..ov.len())
            .map(|x| {
                let u = upto[x].take().expect("every vertex hears its interval end");
                match &before[x] {
                    Some(b) => sub(&u, b),
                    None => u,
                }
            })
            .collect())
    }

    /// The root whose head followed tail `q` before the cut: the tail
    /// leaves toward it.
    fn root_of_tail(&self, ov: &Overlay, q: usize) -> usize {
        let x = self.tour.owner[q];
        ov.adj[x][(self.tour.index[q] + 1) % ov.degree(x)].0
    }

    /// For every vertex v and every neighbor u, the sum of `vals` over the
    /// component of u once v is removed. One more round than `subtree_sums`.
    pub fn neighbor_sums(&self, net: &mut Net, ov: &Overlay, vals: &[i64]) -> Result<Vec<Vec<i64>>, SimError> {
        let (sub, total) = self.subtree_sums(net, ov, vals)?;
        let parcels = (0..ov.len())
            .filter_map(|x| self.parent[x].map(|p| Parcel::new(ov.host[x], ov.host[p], p, (Handle(x), sub[x]))))
            .collect();
        let mut out: Vec<Vec<i64>> = (0..ov.len()).map(|x| vec![0; ov.degree(x)]).collect();
        for (p, (Handle(c), s)) in deliver(net, parcels)? {
            out[p][ov.index_of(p, c).unwrap()] = s;
        }
        for x in 0..ov.len() {
            if let Some(p) = self.parent[x] {
                out[x][ov.index_of(x, p).unwrap()] = total[x] - sub[x];
            }
        }
        Ok(out)
    }
}

/// Roots every component of the overlay forest: at the flagged root, or at
/// the vertex with the largest key when `roots` is None.
pub fn root_forest(
    net: &mut Net,
    ov: &Overlay,
    orient: &Orientation,
    roots: Option<&[bool]>,
) -> Result<RootedForest, SimError> {
    let tour = build_tour(net, ov, orient)?;
    root_tour(net, ov, tour, roots)
}

pub fn root_tour(net: &mut Net, ov: &Overlay, tour: Tour, roots: Option<&[bool]>) -> Result<RootedForest, SimError> {
    let p = tour.list.len();
    let last = |x: usize| tour.vn(x, tour.count(x) - 1);
    let mut head = vec![false; p];
    let mut known_root: Vec<bool> = vec![false; ov.len()];
    match roots {
        Some(r) => {
            let parcels = (0..ov.len())
                .filter(|&x| r[x])
                .map(|x| Parcel::new(ov.host[x], tour.list.host[last(x)], last(x), ()))
                .collect();
            for (q, ()) in deliver(net, parcels)? {
                head[q] = true;
            }
            known_root.copy_from_slice(r);
        }
        None => {
            let sc = ring_shortcuts(net, &tour)?;
            let keys: Vec<u64> = (0..p).map(|q| ov.key[tour.owner[q]]).collect();
            let t = window(net, &tour.list, &sc, Dir::Forward, keys, |a, b, _| *a.max(b))?;
            let top = t.last().unwrap();
            for x in 0..ov.len() {
                let q = last(x);
                head[q] = top[q] == ov.key[x];
            }
        }
    }
    let heads: Vec<usize> = (0..p).filter(|&q| head[q]).collect();
    let mut tail = vec![false; p];
    for &q in &heads {
        if let Some(t) = tour.list.pred[q] {
            tail[t] = true;
        }
    }
    let list = tour.list.cut_before(net, &heads)?;
    let tour = Tour { list, ..tour };
    let sc = introduce(net, &tour.list, p)?;

    let mut init = vec![None; p];
    for &q in &heads {
        init[q] = Some(0i64);
    }
    let pos: Vec<usize> = sweep(net, &tour.list, &sc, Dir::Forward, init, |v, _, k| v + (1i64 << k), |a, b| a < b)?
        .into_iter()
        .map(|v| v.expect("tour paths are connected") as usize)
        .collect();

    // each visit tells the owner's next visit where it left along the shared edge
    let mut parcels = Vec::new();
    for q in 0..p {
        let x = tour.owner[q];
        let d = tour.count(x);
        let nq = tour.vn(x, (tour.index[q] + 1) % d);
        parcels.push(Parcel::new(tour.list.host[q], tour.list.host[nq], nq, pos[q] as i64));
    }
    let mut left_at = vec![0usize; p];
    for (q, v) in deliver(net, parcels)? {
        left_at[q] = v as usize;
    }

    let mut parcels = Vec::new();
    for q in 0..p {
        let x = tour.owner[q];
        let i = tour.index[q];
        let d = tour.count(x);
        if head[q] {
            if roots.is_none() {
                parcels.push(Parcel::new(tour.list.host[q], ov.host[x], x, RootNote::Root));
            }
        } else if ov.degree(x) > 0 && pos[q] <= left_at[q] {
            parcels.push(Parcel::new(
                tour.list.host[q],
                ov.host[x],
                x,
                RootNote::Parent {
                    idx: Idx(i),
                    at: pos[q] as i64,
                    back: left_at[q] as i64,
                },
            ));
            let lq = tour.vn(x, (i + d - 1) % d);
            parcels.push(Parcel::new(tour.list.host[q], tour.list.host[lq], lq, RootNote::Leave));
        } else if ov.degree(x) == 0 && roots.is_none() {
            // an isolated vertex is its own component
            parcels.push(Parcel::new(tour.list.host[q], ov.host[x], x, RootNote::Root));
        }
    }
    let mut parent = vec![None; ov.len()];
    let mut enter = vec![0usize; ov.len()];
    let mut leave = vec![None; ov.len()];
    let mut span = vec![None; ov.len()];
    for x in 0..ov.len() {
        if known_root[x] {
            enter[x] = tour.count(x) - 1;
        }
    }
    for (x, note) in deliver(net, parcels)? {
        // leave notes reach the leaving visit's host; the owner already
        // derives the same index from the parent note
        match note {
            RootNote::Root => {
                known_root[x] = true;
                enter[x] = tour.count(x) - 1;
            }
            RootNote::Parent { idx, at, back } => {
                let d = ov.degree(x);
                span[x] = Some((at as usize, back as usize));
                parent[x] = Some(ov.adj[x][idx.0].0);
                enter[x] = idx.0;
                leave[x] = Some((idx.0 + d - 1) % d);
            }
            RootNote::Leave => {}
        }
    }
    Ok(RootedForest {
        tour,
        sc,
        pos,
        parent,
        enter,
        leave,
        span,
        head,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, oracle_sssp, GenParams, GraphClass, WeightedGraph};
    use crate::netsim::SimConfig;
    use crate::primitives::orient::orient_low_outdegree;

    fn setup(g: &WeightedGraph) -> (Net, Overlay, Orientation) {
        let mut net = Net::new(g, &SimConfig::default()).unwrap();
        let ov = Overlay::of_graph(g);
        let o = orient_low_outdegree(&mut net, &ov, 1).unwrap();
        (net, ov, o)
    }

    #[test]
    fn path_tour_sizes() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let (mut net, ov, o) = setup(&g);
        let t = build_tour(&mut net, &ov, &o).unwrap();
        assert_eq!(t.list.len(), 4);
        assert_eq!(t.list.succ.iter().flatten().count(), 4);
    }

    #[test]
    fn star_center_visited_three_times() {
        let g = WeightedGraph::new(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        let (mut net, ov, o) = setup(&g);
        let t = build_tour(&mut net, &ov, &o).unwrap();
        assert_eq!(t.count(0), 3);
        assert_eq!(t.list.len(), 6);
    }

    #[test]
    fn hosting_is_bounded() {
        for seed in 0..10 {
            let g = generate(GraphClass::Tree, 64, &GenParams::default(), seed).unwrap();
            let (mut net, ov, o) = setup(&g);
            let t = build_tour(&mut net, &ov, &o).unwrap();
            assert!(t.max_hosted() <= 6);
            assert_eq!(t.list.len(), 2 * 63);
        }
    }

    fn reference_parents(g: &WeightedGraph, r: usize) -> Vec<Option<usize>> {
        let mut par = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        let mut st = vec![r];
        seen[r] = true;
        while let Some(x) = st.pop() {
            for &(y, _) in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    par[y] = Some(x);
                    st.push(y);
                }
            }
        }
        par
    }

    #[test]
    fn rooting_distances_heights_sums() {
        for seed in 0..25 {
            let n = 2 + seed as usize * 7;
            let g = generate(GraphClass::Tree, n.max(4), &GenParams::default(), seed).unwrap();
            let (mut net, ov, o) = setup(&g);
            let rooted = root_forest(&mut net, &ov, &o, None).unwrap();
            let r = g.n() - 1;
            assert_eq!(rooted.parent, reference_parents(&g, r));
            let (d, dvn) = rooted.distances(&mut net, &ov, &vec![0; g.n()]).unwrap();
            let oracle: Vec<i64> = oracle_sssp(&g, r).into_iter().map(|x| x as i64).collect();
            assert_eq!(d, oracle);
            for q in 0..dvn.len() {
                assert_eq!(dvn[q], oracle[rooted.tour.owner[q]]);
            }
            let h = rooted.heights(&mut net, &ov, &d, &dvn).unwrap();
            for v in 0..g.n() {
                // height: farthest descendant
                let mut best = 0;
                for u in 0..g.n() {
                    let mut a = Some(u);
                    while let Some(x) = a {
                        if x == v {
                            best = best.max(oracle[u] - oracle[v]);
                            break;
                        }
                        a = rooted.parent[x];
                    }
                }
                assert_eq!(h[v], best, "seed {seed} v {v}");
            }
            let vals: Vec<i64> = (0..g.n() as i64).map(|v| v % 5 - 1).collect();
            let ns = rooted.neighbor_sums(&mut net, &ov, &vals).unwrap();
            let total: i64 = vals.iter().sum();
            for v in 0..g.n() {
                assert_eq!(ns[v].iter().sum::<i64>() + vals[v], total);
            }
        }
    }

    #[test]
    fn rooted_at_given_source() {
        let g = WeightedGraph::new(4, &[(0, 1, 5), (1, 2, 2), (1, 3, 7)]).unwrap();
        let (mut net, ov, o) = setup(&g);
        let mut roots = vec![false; 4];
        roots[0] = true;
        let rooted = root_forest(&mut net, &ov, &o, Some(&roots)).unwrap();
        assert_eq!(rooted.parent, vec![None, Some(0), Some(1), Some(1)]);
        let (d, dvn) = rooted.distances(&mut net, &ov, &[0, 0, 0, 0]).unwrap();
        assert_eq!(d, vec![0, 5, 7, 12]);
        let h = rooted.heights(&mut net, &ov, &d, &dvn).unwrap();
        assert_eq!(h, vec![12, 7, 0, 0]);
    }

    #[test]
    fn forest_components() {
        let g = WeightedGraph::new(6, &[(0, 1, 1), (1, 2, 1), (3, 4, 2), (4, 5, 3)]).unwrap();
        let mut net = Net::new(&WeightedGraph::new(6, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 2), (4, 5, 3)]).unwrap(), &SimConfig::default()).unwrap();
        let ov = Overlay::of_graph(&g);
        let o = orient_low_outdegree(&mut net, &ov, 1).unwrap();
        let tour = build_tour(&mut net, &ov, &o).unwrap();
        let sc = ring_shortcuts(&mut net, &tour).unwrap();
        let mx = component_extreme(&mut net, &ov, &tour, &sc, &[3i64, 7, 5, 1, 9, 2], |a, b| *a.max(b)).unwrap();
        assert_eq!(mx, vec![7, 7, 7, 9, 9, 9]);
        let rooted = root_tour(&mut net, &ov, tour, None).unwrap();
        let (_, total) = rooted.subtree_sums(&mut net, &ov, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(total, vec![6, 6, 6, 15, 15, 15]);
    }
}
