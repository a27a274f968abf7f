//! Degree-3 virtualization of the spanning tree and the balanced
//! decomposition tree over it.

use crate::graphs::clog2;
use crate::netsim::{Net, Payload, SimError, Widths};
use crate::primitives::euler::{component_extreme, root_tour, ring_shortcuts, RootedForest};
use crate::primitives::overlay::Overlay;
use crate::primitives::route::{deliver, Handle, Parcel};
use crate::tree_algos::ForestTour;

/// Vertex key of the binarized tree: ids below n are real, n + host for the
/// virtual vertex a host carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Key(pub u64);

impl Payload for Key {
    fn bits(&self, w: &Widths) -> u32 {
        w.id + 1
    }
}

/// Index of a child edge at its decomposition parent: 0, 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Branch(pub u8);

impl Payload for Branch {
    fn bits(&self, _: &Widths) -> u32 {
        2
    }
}

/// A root-to-vertex path in the decomposition tree, two bits per level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Label {
    pub code: u64,
    pub len: u32,
}

impl Label {
    pub fn child(&self, b: Branch) -> Label {
        Label {
            code: self.code << 2 | b.0 as u64,
            len: self.len + 1,
        }
    }

    pub fn is_prefix_of(&self, other: &Label) -> bool {
        self.len <= other.len && other.code >> (2 * (other.len - self.len)) == self.code
    }

    /// The first `k` levels.
    pub fn truncate(&self, k: u32) -> Label {
        let k = k.min(self.len);
        Label {
            code: self.code >> (2 * (self.len - k)),
            len: k,
        }
    }

    /// Length of the longest common prefix, in levels.
    pub fn common(&self, other: &Label) -> u32 {
        let mut k = self.len.min(other.len);
        while self.truncate(k) != other.truncate(k) {
            k -= 1;
        }
        k
    }

    pub fn bit_string(&self) -> String {
        (0..self.len)
            .map(|i| format!("{:02b}", (self.code >> (2 * (self.len - 1 - i))) & 3))
            .collect()
    }
}

impl Payload for Label {
    fn bits(&self, w: &Widths) -> u32 {
        // up to id + 2 levels plus the length
        2 * (w.id + 2) + clog2(w.id as usize + 3) as u32
    }
}

/// The spanning tree with every fan-out above two replaced by a binary
/// tree of zero-weight virtual vertices.
#[derive(Debug, Clone)]
pub struct Binarized {
    /// Vertices 0..n are the real nodes, the rest are virtual.
    pub ov: Overlay,
    pub n: usize,
    /// The spanning tree itself, with its tour, rooted at the highest id.
    pub tree: ForestTour,
    pub rooted: RootedForest,
}

impl Binarized {
    pub fn is_virtual(&self, x: usize) -> bool {
        x >= self.n
    }
}

#[derive(Debug, Clone)]
struct FanOut {
    /// Host of the inner vertex above the receiving child.
    up: usize,
    /// For the child that carries an inner vertex: its parent (the fanning
    /// node itself when None) and its two lower neighbors, each tagged with
    /// whether it is inner.
    inner: Option<(Option<usize>, (usize, bool), (usize, bool))>,
}

impl Payload for FanOut {
    fn bits(&self, w: &Widths) -> u32 {
        w.id + 1 + self.inner.as_ref().map_or(0, |_| 4 * w.id + 3)
    }
}

/// Roots the tree at the highest id, and every node with k ≥ 3 children
/// hands them a heap-shaped binary tree of k − 1 virtual vertices: inner
/// vertex j is hosted by child j, inner vertex 0 hangs off the node, and
/// child j is leaf k − 1 + j. One round of local messages after rooting.
pub fn binarize(net: &mut Net, n: usize, tree_edges: &[(usize, usize, u64)]) -> Result<Binarized, SimError> {
    let ov = Overlay::from_edges((0..n).collect(), (0..n as u64).collect(), tree_edges);
    let tree = ForestTour::build(net, ov)?;
    let rooted = root_tour(net, &tree.ov, tree.tour.clone(), None)?;
    let t = &tree.ov;

    let mut parcels = Vec::new();
    for v in 0..n {
        let ch = rooted.children(t, v);
        let k = ch.len();
        if k < 3 {
            continue;
        }
        let at = |h: usize| if h < k - 1 { (ch[h], true) } else { (ch[h - (k - 1)], false) };
        for (j, &c) in ch.iter().enumerate() {
            let up = ch[(k - 1 + j - 1) / 2];
            let inner = (j < k - 1).then(|| ((j > 0).then(|| ch[(j - 1) / 2]), at(2 * j + 1), at(2 * j + 2)));
            parcels.push(Parcel::direct(v, c, FanOut { up, inner }));
        }
    }
    let got = deliver(net, parcels)?;

    // virtual vertex of host c: index n + rank among hosts
    let mut vindex = vec![usize::MAX; n];
    let mut host: Vec<usize> = (0..n).collect();
    for (c, f) in &got {
        if f.inner.is_some() {
            vindex[*c] = host.len();
            host.push(*c);
        }
    }
    let key: Vec<u64> = host
        .iter()
        .enumerate()
        .map(|(x, &h)| if x < n { x as u64 } else { (n + h) as u64 })
        .collect();
    let fanned: Vec<bool> = (0..n).map(|v| rooted.children(t, v).len() >= 3).collect();
    let mut edges = Vec::new();
    for &(u, v, w) in tree_edges {
        let (p, c) = if rooted.parent[v] == Some(u) { (u, v) } else { (v, u) };
        if !fanned[p] {
            edges.push((p, c, w));
        }
    }
    for (c, f) in &got {
        let w = t.adj[*c][t.index_of(*c, rooted.parent[*c].unwrap()).unwrap()].1;
        edges.push((vindex[f.up], *c, w));
        if let Some((par, _, _)) = f.inner {
            let p = match par {
                Some(h) => vindex[h],
                None => rooted.parent[*c].unwrap(),
            };
            edges.push((p, vindex[*c], 0));
        }
    }
    Ok(Binarized {
        ov: Overlay::from_edges(host, key, &edges),
        n,
        tree,
        rooted,
    })
}

/// Balanced decomposition of the binarized tree. Per vertex: parent and
/// parent-edge weight (the tree distance), label, depth, and the distances
/// to all its decomposition ancestors by depth.
#[derive(Debug, Clone)]
pub struct DecompositionTree {
    pub parent: Vec<Option<usize>>,
    pub weight: Vec<i64>,
    pub label: Vec<Label>,
    /// `anc[x][d]`: tree distance from x to its ancestor at depth d;
    /// the last entry is 0 for x itself.
    pub anc: Vec<Vec<i64>>,
    /// Children per branch index of the parent's neighbor list.
    pub children: Vec<Vec<(Branch, usize)>>,
    /// Size of the component x was chosen in.
    pub size: Vec<usize>,
    pub root: usize,
}

impl DecompositionTree {
    pub fn depth(&self, x: usize) -> usize {
        self.label[x].len as usize
    }

    pub fn max_depth(&self) -> usize {
        (0..self.label.len()).map(|x| self.depth(x)).max().unwrap_or(0)
    }
}

/// Levels a run may take: the depth bound plus the root level.
pub fn level_budget(n: usize) -> usize {
    clog2(n) + 2
}

/// One level per iteration. Every component of the tree minus the split
/// vertices chosen so far is rooted at the vertex next to its caller (the
/// split vertex whose removal created it), which yields the distances from
/// the caller and the component sizes around every vertex. The highest key
/// whose removal leaves parts of at most half the component becomes the
/// split vertex and a child of the caller; its label extends the caller's
/// by the index of the edge the component hangs off.
pub fn build_decomposition_tree(net: &mut Net, b: &Binarized) -> Result<DecompositionTree, SimError> {
    let m3 = &b.ov;
    let p = m3.len();
    let mut key_index = std::collections::HashMap::new();
    for x in 0..p {
        key_index.insert(m3.key[x], x);
    }

    // every vertex learns its index in each neighbor's list
    let parcels = (0..p)
        .flat_map(|x| {
            m3.adj[x]
                .iter()
                .enumerate()
                .map(move |(i, &(y, _))| Parcel::new(m3.host[x], m3.host[y], y, (Handle(x), Branch(i as u8))))
        })
        .collect();
    let mut index_at: Vec<Vec<(usize, Branch)>> = vec![Vec::new(); p];
    for (y, (Handle(x), br)) in deliver(net, parcels)? {
        index_at[y].push((x, br));
    }

    let mut active = vec![true; p];
    let mut caller: Vec<Option<usize>> = vec![None; p];
    let mut caller_label = vec![Label::default(); p];
    let mut t = DecompositionTree {
        parent: vec![None; p],
        weight: vec![0; p],
        label: vec![Label::default(); p],
        anc: vec![Vec::new(); p],
        children: vec![Vec::new(); p],
        size: vec![0; p],
        root: usize::MAX,
    };
    let ones = vec![1i64; p];

    for level in 0..level_budget(b.n) {
        let forest = Overlay::from_edges(
            m3.host.clone(),
            m3.key.clone(),
            &m3.edges().into_iter().filter(|&(u, v, _)| active[u] && active[v]).collect::<Vec<_>>(),
        );
        let ft = ForestTour::build(net, forest)?;
        let f = &ft.ov;
        let gate = |y: usize| caller[y].filter(|&c| m3.index_of(y, c).is_some());
        let rf = if level == 0 {
            root_tour(net, f, ft.tour.clone(), None)?
        } else {
            let roots: Vec<bool> = (0..p).map(|y| !active[y] || gate(y).is_some()).collect();
            ft.root(net, &roots)?
        };
        let seed: Vec<i64> = (0..p)
            .map(|y| gate(y).map_or(0, |c| m3.adj[y][m3.index_of(y, c).unwrap()].1 as i64))
            .collect();
        let (dist, _) = rf.distances(net, f, &seed)?;
        let parts = rf.neighbor_sums(net, f, &ones)?;

        let size: Vec<usize> = (0..p).map(|x| 1 + parts[x].iter().sum::<i64>() as usize).collect();
        let cand: Vec<(Option<Key>, Option<Branch>)> = (0..p)
            .map(|x| {
                let ok = active[x] && parts[x].iter().all(|&s| 2 * s as usize <= size[x]);
                let br = gate(x).map(|c| {
                    index_at[x].iter().find(|e| e.0 == c).expect("caller is a neighbor").1
                });
                (ok.then_some(Key(m3.key[x])), br)
            })
            .collect();
        let sc = ring_shortcuts(net, &ft.tour)?;
        let pick = component_extreme(net, f, &ft.tour, &sc, &cand, |a, b| (a.0.max(b.0), a.1.max(b.1)))?;

        let mut parcels = Vec::new();
        for x in (0..p).filter(|&x| active[x]) {
            if level > 0 {
                t.anc[x].push(dist[x]);
            }
            let (Some(Key(k)), br) = pick[x] else {
                return Err(SimError::Contract("a component without a split vertex".into()));
            };
            let s = key_index[&k];
            let label = match br {
                Some(br) => caller_label[x].child(br),
                None => caller_label[x],
            };
            if s == x {
                t.parent[x] = caller[x];
                t.weight[x] = if level > 0 { dist[x] } else { 0 };
                t.label[x] = label;
                t.size[x] = size[x];
                t.anc[x].push(0);
                match (caller[x], br) {
                    (Some(c), Some(br)) => parcels.push(Parcel::new(m3.host[x], m3.host[c], c, (Handle(x), br))),
                    _ => t.root = x,
                }
            } else {
                caller[x] = Some(s);
                caller_label[x] = label;
            }
        }
        for (c, (Handle(x), br)) in deliver(net, parcels)? {
            t.children[c].push((br, x));
        }
        for x in 0..p {
            if active[x] && pick[x].0 == Some(Key(m3.key[x])) {
                active[x] = false;
            }
        }
    }
    if active.iter().any(|&a| a) {
        return Err(SimError::Contract("decomposition deeper than its level budget".into()));
    }
    for c in t.children.iter_mut() {
        c.sort_unstable();
    }
    Ok(t)
}
