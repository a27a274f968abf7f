//! Shortcut numbering, representatives and the min-plus squarings.

use super::decomp::{Binarized, DecompositionTree, Label};
use crate::graphs::{clog2, flog2, WeightedGraph};
use crate::netsim::{Net, Payload, SimError};
use crate::primitives::clique::allreduce;
use crate::primitives::orient::orient_low_outdegree;
use crate::primitives::overlay::Overlay;
use crate::primitives::route::{deliver, Parcel};
use crate::primitives::vlist::{window, Dir};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense numbers for the shortcut vertices in tour order of the spanning
/// tree: a prefix count over the arrival visits, one window pass.
pub fn number_shortcuts(net: &mut Net, b: &Binarized, sigma: &[bool]) -> Result<(Vec<Option<usize>>, usize), SimError> {
    let rf = &b.rooted;
    let ov = &b.tree.ov;
    let l = &rf.tour.list;
    let parcels = (0..b.n)
        .filter(|&x| sigma[x])
        .map(|x| {
            let q = rf.tour.vn(x, rf.enter[x]);
            Parcel::new(x, l.host[q], q, 1u64)
        })
        .collect();
    let mut placed = vec![0u64; l.len()];
    for (q, v) in deliver(net, parcels)? {
        placed[q] = v;
    }
    let prefix = window(net, l, &rf.sc, Dir::Backward, placed.clone(), |a, b, _| a + b)?;
    let prefix = prefix.last().unwrap();
    let parcels = (0..b.n)
        .filter(|&x| sigma[x])
        .map(|x| {
            let q = rf.tour.vn(x, rf.enter[x]);
            Parcel::new(l.host[q], ov.host[x], x, prefix[q] - placed[q])
        })
        .collect();
    let mut number = vec![None; b.n];
    for (x, k) in deliver(net, parcels)? {
        number[x] = Some(k as usize);
    }
    let counts = (0..b.n).map(|x| sigma[x] as u64).collect();
    let total = allreduce(net, counts, |a, b| a + b)?[0] as usize;
    Ok((number, total))
}

/// The shared hash: pair representatives h(i, j) = h(j, i) and triple
/// representatives h(i, j, k) = h(j, i, k), each a node id.
#[derive(Debug, Clone, Copy)]
pub struct Representatives {
    pub seed: u64,
    pub n: usize,
}

impl Representatives {
    fn draw(&self, tag: u64, a: usize, b: usize, c: usize) -> usize {
        let mut key = [0u8; 32];
        for (i, x) in [self.seed, tag << 62 | a as u64, b as u64, c as u64].into_iter().enumerate() {
            key[8 * i..8 * i + 8].copy_from_slice(&x.to_le_bytes());
        }
        ChaCha8Rng::from_seed(key).gen_range(0..self.n)
    }

    pub fn pair(&self, i: usize, j: usize) -> usize {
        self.draw(1, i.min(j), i.max(j), 0)
    }

    pub fn triple(&self, i: usize, j: usize, k: usize) -> usize {
        self.draw(2, i.min(j), i.max(j), k)
    }
}

/// A multicast group: a source and members in rank order, arranged as a
/// binary heap below the source (rank r forwards to 2r + 1 and 2r + 2).
/// The shape follows from the shared hash, so members know their tree
/// neighbors without a join phase.
#[derive(Debug, Clone)]
pub struct Group {
    pub source: usize,
    pub members: Vec<usize>,
}

fn heap_depth(m: usize) -> usize {
    if m == 0 {
        0
    } else {
        flog2(m) + 1
    }
}

/// Pipelines every group's items down its heap: each member ends up with
/// all items of its group. Items + depth rounds; a member receives at most
/// one item per round.
pub fn multicast<V: Payload>(net: &mut Net, groups: &[Group], items: &[Vec<V>]) -> Result<Vec<Vec<Vec<V>>>, SimError> {
    let mut offset = Vec::with_capacity(groups.len());
    let mut total = 0;
    for g in groups {
        offset.push(total);
        total += g.members.len();
    }
    let mut got: Vec<Vec<Vec<V>>> = groups.iter().map(|g| vec![Vec::new(); g.members.len()]).collect();
    let depth = groups.iter().map(|g| heap_depth(g.members.len())).max().unwrap_or(0);
    let len = items.iter().map(Vec::len).max().unwrap_or(0);
    if total == 0 || len == 0 {
        return Ok(got);
    }
    // fresh[g][r]: the item member r received in the previous round
    let mut fresh: Vec<Vec<Option<V>>> = groups.iter().map(|g| vec![None; g.members.len()]).collect();
    for round in 0..len + depth {
        let mut parcels = Vec::new();
        for (gi, g) in groups.iter().enumerate() {
            if g.members.is_empty() {
                continue;
            }
            if let Some(v) = items[gi].get(round) {
                parcels.push(Parcel::new(g.source, g.members[0], offset[gi], v.clone()));
            }
            for r in 0..g.members.len() {
                if let Some(v) = fresh[gi][r].take() {
                    for c in [2 * r + 1, 2 * r + 2].into_iter().filter(|&c| c < g.members.len()) {
                        parcels.push(Parcel::new(g.members[r], g.members[c], offset[gi] + c, v.clone()));
                    }
                }
            }
        }
        for (slot, v) in deliver(net, parcels)? {
            let gi = offset.partition_point(|&o| o <= slot) - 1;
            let r = slot - offset[gi];
            got[gi][r].push(v.clone());
            fresh[gi][r] = Some(v);
        }
    }
    Ok(got)
}

/// Folds every group's member values up its heap to the source, deepest
/// level first. Depth rounds plus one; None for empty groups.
pub fn aggregate<V: Payload>(
    net: &mut Net,
    groups: &[Group],
    vals: Vec<Vec<V>>,
    op: impl Fn(&V, &V) -> V,
) -> Result<Vec<Option<V>>, SimError> {
    let depth = groups.iter().map(|g| heap_depth(g.members.len())).max().unwrap_or(0);
    let mut acc = vals;
    for level in (1..depth).rev() {
        let mut parcels = Vec::new();
        for (gi, g) in groups.iter().enumerate() {
            let lo = (1 << level) - 1;
            for r in lo..(2 * lo + 1).min(g.members.len()) {
                let p = (r - 1) / 2;
                parcels.push(Parcel::new(g.members[r], g.members[p], gi, (p, acc[gi][r].clone())));
            }
        }
        for (gi, (p, v)) in deliver(net, parcels)? {
            acc[gi][p] = op(&acc[gi][p], &v);
        }
    }
    let parcels = groups
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.members.is_empty())
        .map(|(gi, g)| Parcel::new(g.members[0], g.source, gi, acc[gi][0].clone()))
        .collect();
    let mut out = vec![None; groups.len()];
    if depth > 0 {
        for (gi, v) in deliver(net, parcels)? {
            out[gi] = Some(v);
        }
    }
    Ok(out)
}

/// A tree distance or a lookup item for it: the label of a shortcut vertex
/// first, then its distances to its decomposition ancestors.
#[derive(Debug, Clone, Copy)]
enum Lookup {
    Label(Label, usize),
    Anc(i64),
}

impl Payload for Lookup {
    fn bits(&self, w: &crate::netsim::Widths) -> u32 {
        1 + match self {
            Lookup::Label(l, v) => l.bits(w) + v.bits(w),
            Lookup::Anc(d) => d.bits(w),
        }
    }
}

/// Pairwise distances among the shortcut vertices, as held by the pair
/// representatives. `dist[i][j]` is symmetric with a zero diagonal;
/// `history[t]` is the matrix after t squarings (index 0: the start).
#[derive(Debug, Clone)]
pub struct ShortcutApsp {
    pub ids: Vec<usize>,
    pub dist: Vec<Vec<i64>>,
    pub history: Vec<Vec<Vec<i64>>>,
    pub reps: Representatives,
}

impl ShortcutApsp {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.dist[i][j]
    }
}

pub fn squarings(n: usize) -> usize {
    clog2(n) + 2
}

/// Pair representatives first learn the tree distance of their pair from
/// the two labels and ancestor distances (multicast by each shortcut
/// vertex to its pair representatives; the decomposition LCA lies on the
/// tree path). Non-tree edge weights arrive along a low-outdegree
/// orientation. Then every squaring multicasts each entry to its triple
/// representatives, triples swap entries so that ({i,j}, k) holds A[i][k]
/// and A[k][j], and a MIN aggregation brings the sums back.
pub fn shortcut_apsp(
    net: &mut Net,
    g: &WeightedGraph,
    t: &DecompositionTree,
    ids: &[usize],
    non_tree: &[(usize, usize, u64)],
    seed: u64,
) -> Result<ShortcutApsp, SimError> {
    let n = g.n();
    let nc = ids.len();
    let reps = Representatives { seed, n };
    let mut a = vec![vec![0i64; nc]; nc];
    if nc < 2 {
        return Ok(ShortcutApsp {
            ids: ids.to_vec(),
            dist: a.clone(),
            history: vec![a],
            reps,
        });
    }
    let mut number = vec![usize::MAX; n];
    for (i, &v) in ids.iter().enumerate() {
        number[v] = i;
    }
    let pairs: Vec<(usize, usize)> = (0..nc).flat_map(|i| (i + 1..nc).map(move |j| (i, j))).collect();

    // tree distances: label then ancestor distances down each vertex's group
    let groups: Vec<Group> = (0..nc)
        .map(|i| Group {
            source: ids[i],
            members: (0..nc).filter(|&k| k != i).map(|k| reps.pair(i, k)).collect(),
        })
        .collect();
    let items: Vec<Vec<Lookup>> = (0..nc)
        .map(|i| {
            let v = ids[i];
            std::iter::once(Lookup::Label(t.label[v], v))
                .chain(t.anc[v].iter().map(|&d| Lookup::Anc(d)))
                .collect()
        })
        .collect();
    let got = multicast(net, &groups, &items)?;
    // what the representative of {i, k} heard from i
    let heard = |i: usize, k: usize| -> (Label, Vec<i64>) {
        let r = if k < i { k } else { k - 1 };
        let mut l = Label::default();
        let mut anc = Vec::new();
        for it in &got[i][r] {
            match *it {
                Lookup::Label(x, _) => l = x,
                Lookup::Anc(d) => anc.push(d),
            }
        }
        (l, anc)
    };
    for &(i, j) in &pairs {
        let (li, ai) = heard(i, j);
        let (lj, aj) = heard(j, i);
        let c = li.common(&lj) as usize;
        a[i][j] = ai[c] + aj[c];
        a[j][i] = a[i][j];
    }

    // non-tree edges: the tail of each oriented edge tells the representative
    let eov = Overlay::from_edges((0..n).collect(), (0..n as u64).collect(), non_tree);
    let o = orient_low_outdegree(net, &eov, clog2(n).max(1))?;
    let parcels = non_tree
        .iter()
        .map(|&(u, v, w)| {
            let (s, d) = if o.points_out(&eov, u, v) { (u, v) } else { (v, u) };
            let (i, j) = (number[s].min(number[d]), number[s].max(number[d]));
            Parcel::new(s, reps.pair(i, j), i * nc + j, w)
        })
        .collect();
    for (slot, w) in deliver(net, parcels)? {
        let (i, j) = (slot / nc, slot % nc);
        a[i][j] = a[i][j].min(w as i64);
        a[j][i] = a[i][j];
    }

    let mut history = vec![a.clone()];
    let tri_groups: Vec<Group> = pairs
        .iter()
        .map(|&(i, j)| Group {
            source: reps.pair(i, j),
            members: (0..nc).filter(|&k| k != i && k != j).map(|k| reps.triple(i, j, k)).collect(),
        })
        .collect();
    let others = |i: usize, j: usize| (0..nc).filter(move |&k| k != i && k != j);
    for _ in 0..squarings(n) {
        let items: Vec<Vec<i64>> = pairs.iter().map(|&(i, j)| vec![a[i][j]]).collect();
        let got = multicast(net, &tri_groups, &items)?;
        // ({i,j}, k) hands A[i][j] to ({i,k}, j) and ({j,k}, i)
        let mut parcels = Vec::new();
        for (pi, &(i, j)) in pairs.iter().enumerate() {
            for (r, k) in others(i, j).enumerate() {
                let v = got[pi][r][0];
                let from = reps.triple(i, j, k);
                for (x, y, z) in [(i, k, j), (j, k, i)] {
                    parcels.push(Parcel::new(from, reps.triple(x, y, z), (x.min(y) * nc + x.max(y)) * nc + z, v));
                }
            }
        }
        let mut sum = vec![0i64; nc * nc * nc];
        for (slot, v) in deliver(net, parcels)? {
            sum[slot] += v;
        }
        let vals: Vec<Vec<i64>> = pairs
            .iter()
            .map(|&(i, j)| others(i, j).map(|k| sum[(i * nc + j) * nc + k]).collect())
            .collect();
        let best = aggregate(net, &tri_groups, vals, |x, y| *x.min(y))?;
        for (pi, &(i, j)) in pairs.iter().enumerate() {
            if let Some(b) = best[pi] {
                a[i][j] = a[i][j].min(b);
                a[j][i] = a[i][j];
            }
        }
        history.push(a.clone());
    }
    Ok(ShortcutApsp {
        ids: ids.to_vec(),
        dist: a,
        history,
        reps,
    })
}
