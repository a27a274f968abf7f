//! Eccentricities on rings of participants, many rings in parallel.
//!
//! A participant x carries a height h(x) (0 on a bare cycle); the
//! eccentricity reported is max over ring members u of d(x,u) + h(u), with
//! d the shorter way around. Two passes of the budget sort settle all
//! participants: the first from the highest key on each ring, the second
//! from that node's left farthest node.

use crate::netsim::{Net, Payload, SimError, Widths};
use crate::primitives::route::{deliver, Handle, Parcel};
use crate::primitives::sort::{bitonic, load, prefix_best, to_participants, Rank};
use crate::primitives::vlist::{sweep, window, Dir, Shortcuts, VList};

/// Single-source distances around each ring. `left` is the forward
/// direction of the list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPass {
    /// The source of the participant's ring.
    pub source: Vec<usize>,
    pub d_left: Vec<i64>,
    pub d_right: Vec<i64>,
    /// Total ring weight.
    pub total: Vec<i64>,
    /// The source's left farthest node: the last participant, going forward,
    /// with d_left ≤ ⌊total/2⌋.
    pub far: Vec<usize>,
}

impl RingPass {
    /// Members on the source's side of the cut, d_left ≤ ⌊W/2⌋.
    pub fn in_b(&self, x: usize) -> bool {
        self.d_left[x] <= self.total[x] / 2
    }

    /// Sort budget.
    pub fn budget(&self, x: usize) -> i64 {
        if self.in_b(x) {
            self.d_left[x]
        } else {
            self.total[x] / 2 - self.d_right[x]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Dist(i64, Handle);

impl Payload for Dist {
    fn bits(&self, w: &Widths) -> u32 {
        w.weight + self.1.bits(w)
    }
}

/// Forward and backward sweeps from the sources (one per ring), the total
/// weight, and the source's left farthest node made known ring-wide.
pub fn source_pass(net: &mut Net, list: &VList, sc: &Shortcuts, src: &[bool]) -> Result<RingPass, SimError> {
    let p = list.len();
    let init: Vec<Option<Dist>> = (0..p).map(|x| src[x].then_some(Dist(0, Handle(x)))).collect();
    let ext = |v: &Dist, w: i64, _: usize| Dist(v.0 + w, v.1);
    let closer = |a: &Dist, b: &Dist| a.0 < b.0;
    let fwd = sweep(net, list, sc, Dir::Forward, init.clone(), ext, closer)?;
    let bwd = sweep(net, list, sc, Dir::Backward, init, ext, closer)?;
    let mut pass = RingPass {
        source: vec![0; p],
        d_left: vec![0; p],
        d_right: vec![0; p],
        total: vec![0; p],
        far: vec![0; p],
    };
    for x in 0..p {
        let (Some(f), Some(b)) = (fwd[x], bwd[x]) else {
            return Err(SimError::Contract(format!("participant {x} is on a ring without source")));
        };
        pass.source[x] = f.1 .0;
        pass.d_left[x] = f.0;
        pass.d_right[x] = b.0;
        pass.total[x] = f.0 + b.0;
    }
    // the source learns the total from its successor
    let parcels = (0..p)
        .filter_map(|x| {
            let q = list.pred[x]?;
            src[q].then(|| Parcel::new(list.host[x], list.host[q], q, pass.total[x]))
        })
        .collect();
    for (q, w) in deliver(net, parcels)? {
        pass.total[q] = w;
    }
    let cand: Vec<Option<Dist>> = (0..p).map(|x| pass.in_b(x).then_some(Dist(pass.d_left[x], Handle(x)))).collect();
    let table = window(net, list, sc, Dir::Forward, cand, |a, b, _| (*a).max(*b))?;
    let top = table.last().expect("window has levels");
    for x in 0..p {
        pass.far[x] = top[x].expect("the source qualifies").1 .0;
    }
    Ok(pass)
}

/// Eccentricities and farthest nodes of every participant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingEcc {
    pub ecc: Vec<i64>,
    pub far_left: Vec<usize>,
    pub far_right: Vec<usize>,
    /// The first pass, from the highest key on each ring.
    pub first: RingPass,
}

/// What a cut-side participant x hands to the members that take it as
/// their left farthest node: d_left(s,x) + m_r(x), m_l(succ x) −
/// d_left(s,x) − w(x, succ x), and the two farthest-node handles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Reach {
    y1: i64,
    y2: i64,
    left: Handle,
    right: Handle,
}

impl Payload for Reach {
    fn bits(&self, w: &Widths) -> u32 {
        2 * w.weight + self.left.bits(w) + self.right.bits(w)
    }
}

impl Reach {
    fn ecc(&self, d_right: i64, total: i64) -> i64 {
        (d_right + self.y1).max(total - d_right + self.y2)
    }
}

/// `list` must consist of rings; `sc` its shortcuts covering the longest
/// ring. `key` picks the first source per ring (highest wins), `h` are the
/// heights.
pub fn ring_eccentricities(
    net: &mut Net,
    list: &VList,
    sc: &Shortcuts,
    key: &[u64],
    h: &[i64],
) -> Result<RingEcc, SimError> {
    let p = list.len();
    if (0..p).any(|x| list.succ[x].is_none()) {
        return Err(SimError::Contract("ring engine needs closed rings".into()));
    }
    let keyed: Vec<(u64, Handle)> = (0..p).map(|x| (key[x], Handle(x))).collect();
    let kmax = window(net, list, sc, Dir::Forward, keyed.clone(), |a, b, _| (*a).max(*b))?;
    let kmax = kmax.last().expect("window has levels");
    let src: Vec<bool> = (0..p).map(|x| kmax[x] == keyed[x]).collect();

    // m_l(x) = max_u h(u) − d_left(x,u), m_r likewise to the right
    let drop = |a: &i64, b: &i64, w: i64| (*a).max(b - w);
    let m_l = window(net, list, sc, Dir::Forward, h.to_vec(), drop)?.pop().expect("levels");
    let m_r = window(net, list, sc, Dir::Backward, h.to_vec(), drop)?.pop().expect("levels");
    let parcels = (0..p)
        .map(|x| {
            let q = list.pred[x].expect("ring");
            Parcel::new(list.host[x], list.host[q], q, m_l[x])
        })
        .collect();
    let mut m_l_next = vec![0; p];
    for (q, v) in deliver(net, parcels)? {
        m_l_next[q] = v;
    }

    let first = source_pass(net, list, sc, &src)?;
    let mut got = settle(net, list, &first, &m_r, &m_l_next)?;
    let far_src: Vec<bool> = (0..p).map(|x| first.far[x] == x).collect();
    let second = source_pass(net, list, sc, &far_src)?;
    for (x, r) in settle(net, list, &second, &m_r, &m_l_next)?.into_iter().enumerate() {
        if got[x].is_none() {
            got[x] = r;
        }
    }
    let mut out = RingEcc {
        ecc: vec![0; p],
        far_left: vec![0; p],
        far_right: vec![0; p],
        first,
    };
    for (x, r) in got.into_iter().enumerate() {
        let Some((e, l, r)) = r else {
            return Err(SimError::Contract(format!("participant {x} found no farthest nodes")));
        };
        out.ecc[x] = e;
        out.far_left[x] = l;
        out.far_right[x] = r;
    }
    Ok(out)
}

/// One budget-sort pass: every participant off the source's side, and the
/// source itself, learns (ecc, left farthest, right farthest).
fn settle(
    net: &mut Net,
    list: &VList,
    pass: &RingPass,
    m_r: &[i64],
    m_l_next: &[i64],
) -> Result<Vec<Option<(i64, usize, usize)>>, SimError> {
    let p = list.len();
    let reach = |x: usize| Reach {
        y1: pass.d_left[x] + m_r[x],
        y2: m_l_next[x] - pass.d_left[x] - list.wsucc[x],
        left: Handle(x),
        right: Handle(list.succ[x].expect("ring")),
    };
    let mut out = vec![None; p];

    // the source hears from its left farthest node, whose handle it knows
    let parcels = (0..p)
        .filter(|&x| pass.far[x] == x)
        .map(|x| {
            let s = pass.source[x];
            let r = reach(x);
            Parcel::new(list.host[x], list.host[s], s, (r.y1, r.y2, r.right))
        })
        .collect();
    for (s, (y1, y2, right)) in deliver(net, parcels)? {
        let r = Reach { y1, y2, left: Handle(pass.far[s]), right };
        out[s] = Some((r.ecc(0, pass.total[s]), r.left.0, r.right.0));
    }

    for x in 0..p {
        if !pass.in_b(x) && pass.budget(x) < 0 {
            return Err(SimError::Contract(format!("negative budget at participant {x}")));
        }
    }
    // ties in budget put the cut side first
    let keys: Vec<(Handle, i64, bool)> = (0..p)
        .map(|x| (Handle(pass.source[x]), pass.budget(x), !pass.in_b(x)))
        .collect();
    let mut wires = load(net, &list.host, keys)?;
    bitonic(net, &mut wires)?;
    let held: Vec<Option<usize>> = wires.slots.iter().map(|s| s.as_ref().map(|e| e.1)).collect();

    // wires tell their participants where they sit; cut-side participants
    // hand their reach back to the wire
    let ranks = to_participants(net, &held, &list.host, (0..held.len()).map(|i| held[i].map(|_| Rank(i))).collect())?;
    let n = net.n();
    let parcels = (0..p)
        .filter(|&x| pass.in_b(x))
        .map(|x| {
            let Rank(i) = ranks[x].expect("every participant holds a wire");
            let r = reach(x);
            // the wire knows whom it holds; the left handle stays home
            Parcel::new(list.host[x], i % n, i, (r.y1, r.y2, r.right))
        })
        .collect();
    let mut at_wire = vec![None; held.len()];
    for (i, (y1, y2, right)) in deliver(net, parcels)? {
        let left = Handle(held[i].expect("wire holds the sender"));
        at_wire[i] = Some(Reach { y1, y2, left, right });
    }
    // each wire keeps the nearest cut-side reach at or before it
    let scanned = prefix_best(net, at_wire, |_, _| false)?;
    let vals = (0..held.len())
        .map(|i| match held[i] {
            Some(x) if !pass.in_b(x) => scanned[i],
            _ => None,
        })
        .collect();
    for (x, r) in to_participants(net, &held, &list.host, vals)?.into_iter().enumerate() {
        if let Some(r) = r {
            out[x] = Some((r.ecc(pass.d_right[x], pass.total[x]), r.left.0, r.right.0));
        }
    }
    Ok(out)
}
