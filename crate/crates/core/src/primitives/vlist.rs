//! Directed lists and rings of participants (virtual nodes) with
//! pointer-jumping shortcuts, sweeps and window tables over them.

use super::route::{deliver, Parcel};
use crate::graphs::flog2;
use crate::netsim::{Net, Payload, SimError, Widths};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VList {
    pub host: Vec<usize>,
    pub succ: Vec<Option<usize>>,
    pub pred: Vec<Option<usize>>,
    /// Weight of the link to the successor, known at the participant.
    pub wsucc: Vec<i64>,
    /// Weight of the link from the predecessor, known at the participant.
    pub wpred: Vec<i64>,
}

impl VList {
    /// Assembles the list once every participant knows both of its links.
    pub fn from_succ(host: Vec<usize>, succ: Vec<Option<usize>>, wsucc: Vec<i64>) -> Self {
        let p = host.len();
        let mut pred = vec![None; p];
        let mut wpred = vec![0; p];
        for x in 0..p {
            if let Some(s) = succ[x] {
                pred[s] = Some(x);
                wpred[s] = wsucc[x];
            }
        }
        VList {
            host,
            succ,
            pred,
            wsucc,
            wpred,
        }
    }

    pub fn len(&self) -> usize {
        self.host.len()
    }

    pub fn is_empty(&self) -> bool {
        self.host.is_empty()
    }

    /// Heads of the lists (participants without a predecessor that have a successor).
    pub fn heads(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.pred[x].is_none() && self.succ[x].is_some())
            .collect()
    }

    /// Drops the link into each participant in `at`. One round: the
    /// participant tells its predecessor's host.
    pub fn cut_before(&self, net: &mut Net, at: &[usize]) -> Result<VList, SimError> {
        let mut out = self.clone();
        let parcels = at
            .iter()
            .filter_map(|&x| {
                self.pred[x].map(|p| Parcel::new(self.host[x], self.host[p], p, ()))
            })
            .collect();
        for &x in at {
            out.pred[x] = None;
            out.wpred[x] = 0;
        }
        for (p, ()) in deliver(net, parcels)? {
            out.succ[p] = None;
            out.wsucc[p] = 0;
        }
        Ok(out)
    }

    /// Installs new successor-link weights (known at each participant) and
    /// informs the successors. One round.
    pub fn reweight(&self, net: &mut Net, wsucc: Vec<i64>) -> Result<VList, SimError> {
        let mut out = self.clone();
        out.wsucc = wsucc;
        let parcels = (0..self.len())
            .filter_map(|x| {
                self.succ[x].map(|s| Parcel::new(self.host[x], self.host[s], s, out.wsucc[x]))
            })
            .collect();
        for (s, w) in deliver(net, parcels)? {
            out.wpred[s] = w;
        }
        Ok(out)
    }
}

/// Shortcut endpoints per level: `right[k][x]` is 2^k links ahead of x,
/// `left[k][x]` 2^k links behind. Weights are forward sums from the left
/// endpoint to the right endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortcuts {
    pub right: Vec<Vec<Option<(usize, i64)>>>,
    pub left: Vec<Vec<Option<(usize, i64)>>>,
}

impl Shortcuts {
    /// Highest level built.
    pub fn top(&self) -> usize {
        self.right.len() - 1
    }

    fn toward(&self, dir: Dir, k: usize, x: usize) -> Option<(usize, i64)> {
        match dir {
            Dir::Forward => self.right[k][x],
            Dir::Backward => self.left[k][x],
        }
    }
}

#[derive(Debug, Clone)]
struct Intro {
    fill_left: bool,
    endpoint: usize,
    weight: i64,
}

impl Payload for Intro {
    fn bits(&self, w: &Widths) -> u32 {
        // side flag, endpoint handle with its host id, summed weight
        1 + w.vid() + 1 + w.id + w.weight
    }
}

/// Number of doubling levels above 0 for lists of at most `max_len` participants.
pub fn levels_for(max_len: usize) -> usize {
    if max_len <= 2 {
        0
    } else {
        flog2(max_len - 1)
    }
}

/// Pointer jumping: level k is built in round k, for k = 1..=levels_for(max_len).
/// Rings wrap around, which only adds longer sums.
pub fn introduce(net: &mut Net, list: &VList, max_len: usize) -> Result<Shortcuts, SimError> {
    let p = list.len();
    let top = levels_for(max_len);
    let mut right = vec![(0..p)
        .map(|x| list.succ[x].map(|s| (s, list.wsucc[x])))
        .collect::<Vec<_>>()];
    let mut left = vec![(0..p)
        .map(|x| list.pred[x].map(|q| (q, list.wpred[x])))
        .collect::<Vec<_>>()];
    for k in 1..=top {
        let mut parcels = Vec::new();
        for x in 0..p {
            if let (Some((l, wl)), Some((r, wr))) = (left[k - 1][x], right[k - 1][x]) {
                let w = wl + wr;
                parcels.push(Parcel::new(list.host[x], list.host[r], r, Intro {
                        fill_left: true,
                        endpoint: l,
                        weight: w,
                    }));
                parcels.push(Parcel::new(list.host[x], list.host[l], l, Intro {
                        fill_left: false,
                        endpoint: r,
                        weight: w,
                    }));
            }
        }
        let mut nr = vec![None; p];
        let mut nl = vec![None; p];
        for (y, m) in deliver(net, parcels)? {
            if m.fill_left {
                nl[y] = Some((m.endpoint, m.weight));
            } else {
                nr[y] = Some((m.endpoint, m.weight));
            }
        }
        right.push(nr);
        left.push(nl);
    }
    Ok(Shortcuts { right, left })
}

/// Descending-level broadcast: every participant holding a value sends
/// `ext(value, shortcut weight, k)` along level k for k = top..0; receivers keep
/// the `better` value. With min-distance semantics the result at each
/// participant is the best value over all sources behind it (ahead of it for
/// `Backward`). top + 1 rounds.
pub fn sweep<V: Payload>(
    net: &mut Net,
    list: &VList,
    sc: &Shortcuts,
    dir: Dir,
    init: Vec<Option<V>>,
    ext: impl Fn(&V, i64, usize) -> V,
    better: impl Fn(&V, &V) -> bool,
) -> Result<Vec<Option<V>>, SimError> {
    let mut val = init;
    for k in (0..=sc.top()).rev() {
        let parcels = (0..list.len())
            .filter_map(|x| {
                let v = val[x].as_ref()?;
                let (y, w) = sc.toward(dir, k, x)?;
                Some(Parcel::new(list.host[x], list.host[y], y, ext(v, w, k)))
            })
            .collect();
        for (y, v) in deliver(net, parcels)? {
            let replace = match &val[y] {
                None => true,
                Some(cur) => better(&v, cur),
            };
            if replace {
                val[y] = Some(v);
            }
        }
    }
    Ok(val)
}

/// Window tables. `Forward`: table[k][x] aggregates the participants in
/// positions [x, x + 2^k); `Backward`: (x − 2^k, x]. `combine(own, other, w)`
/// merges the neighboring window, `w` being the weight of the level-k
/// shortcut between the two window starts. top + 1 rounds; the result has
/// top + 2 levels.
pub fn window<V: Payload>(
    net: &mut Net,
    list: &VList,
    sc: &Shortcuts,
    dir: Dir,
    init: Vec<V>,
    combine: impl Fn(&V, &V, i64) -> V,
) -> Result<Vec<Vec<V>>, SimError> {
    let mut table = vec![init];
    // the participant the window extends toward sends to the one opposite
    let (send_dir, recv_dir) = match dir {
        Dir::Forward => (Dir::Backward, Dir::Forward),
        Dir::Backward => (Dir::Forward, Dir::Backward),
    };
    for k in 0..=sc.top() {
        let cur = &table[k];
        let parcels = (0..list.len())
            .filter_map(|x| {
                let (y, _) = sc.toward(send_dir, k, x)?;
                Some(Parcel::new(list.host[x], list.host[y], y, cur[x].clone()))
            })
            .collect();
        let mut next = cur.clone();
        for (y, v) in deliver(net, parcels)? {
            let (_, w) = sc.toward(recv_dir, k, y).expect("sender is the level-k neighbor");
            next[y] = combine(&cur[y], &v, w);
        }
        table.push(next);
    }
    Ok(table)
}

/// Range query over a window table: aggregate of positions [i, j] given the
/// forward table entry at position i and the backward entry at position j.
pub fn range_level(i: usize, j: usize) -> usize {
    flog2(j - i + 1)
}
