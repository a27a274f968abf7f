//! Sorting over the clique with a bitonic network. Wire i is simulated by
//! real node i mod n; participants are assigned to wires by dense numbering
//! over their hosts.

use super::clique::dense_offsets;
use super::route::Handle;
use crate::netsim::{Envelope, Net, Payload, SimError, Widths};

/// Sorted elements on wires: (key, participant). `None` pads up to a power of two.
#[derive(Debug, Clone)]
pub struct Wires<K> {
    pub slots: Vec<Option<(K, usize)>>,
    /// Number of real elements.
    pub len: usize,
}

pub fn wire_host(i: usize, n: usize) -> usize {
    i % n
}

#[derive(Debug, Clone)]
struct Elem<K>(Option<(K, Handle)>);

impl<K: Payload> Payload for Elem<K> {
    fn bits(&self, w: &Widths) -> u32 {
        1 + self.0.as_ref().map_or(0, |(k, h)| k.bits(w) + h.bits(w))
    }
}

/// Places every participant on a wire. The wire numbering needs the total
/// count, so hosts first run a dense numbering; then one round of transfers.
pub fn load<K: Payload>(net: &mut Net, host: &[usize], keys: Vec<K>) -> Result<Wires<K>, SimError> {
    let n = net.n();
    let mut counts = vec![0u64; n];
    for &h in host {
        counts[h] += 1;
    }
    let (offsets, total) = dense_offsets(net, &counts)?;
    let len = total as usize;
    let m = len.next_power_of_two().max(1);
    let mut next = offsets;
    let mut slots = vec![None; m];
    let mut env = Vec::new();
    for (q, k) in keys.into_iter().enumerate() {
        let h = host[q];
        let wire = next[h] as usize;
        next[h] += 1;
        if wire_host(wire, n) == h {
            slots[wire] = Some((k, q));
        } else {
            env.push(Envelope::global(h, wire_host(wire, n), Wire(wire, Elem(Some((k, Handle(q)))))));
        }
    }
    for (_, d) in net.exchange(env)? {
        let Wire(i, Elem(x)) = d.body;
        slots[i] = x.map(|(k, h)| (k, h.0));
    }
    Ok(Wires { slots, len })
}

/// A message body aimed at a wire; the wire index selects the simulated
/// wire on the receiving node and is bookkeeping, not payload.
#[derive(Debug, Clone)]
struct Wire<M>(usize, M);

impl<M: Payload> Payload for Wire<M> {
    fn bits(&self, w: &Widths) -> u32 {
        // a node simulates O(1) wires, two bits select one
        2 + self.1.bits(w)
    }
}

/// One round of wire-to-wire messages.
fn wire_round<M: Payload>(net: &mut Net, msgs: Vec<(usize, usize, M)>) -> Result<Vec<(usize, M)>, SimError> {
    let n = net.n();
    let mut local = Vec::new();
    let mut env = Vec::new();
    for (from, to, m) in msgs {
        let (a, b) = (wire_host(from, n), wire_host(to, n));
        if a == b {
            local.push((to, m));
        } else {
            env.push(Envelope::global(a, b, Wire(to, m)));
        }
    }
    let mut out: Vec<(usize, M)> = net.exchange(env)?.into_iter().map(|(_, d)| (d.body.0, d.body.1)).collect();
    out.extend(local);
    out.sort_by_key(|x| x.0);
    Ok(out)
}

/// Ascending bitonic sort; padding sorts last. ⌈log₂ m⌉(⌈log₂ m⌉+1)/2 rounds.
pub fn bitonic<K: Payload + Ord>(net: &mut Net, wires: &mut Wires<K>) -> Result<(), SimError> {
    let m = wires.slots.len();
    let key = |x: &Option<(K, usize)>| x.as_ref().map(|(k, q)| (k.clone(), *q));
    let mut k = 2;
    while k <= m {
        let mut j = k / 2;
        while j >= 1 {
            let msgs = (0..m)
                .map(|i| {
                    let e = wires.slots[i].as_ref().map(|(k, q)| (k.clone(), Handle(*q)));
                    (i, i ^ j, Elem(e))
                })
                .collect();
            for (i, Elem(other)) in wire_round(net, msgs)? {
                let other = other.map(|(k, h)| (k, h.0));
                let partner = i ^ j;
                let ascending = i & k == 0;
                let low = i < partner;
                let mine = &wires.slots[i];
                // None is the largest element
                let other_smaller = match (key(&other), key(mine)) {
                    (Some(a), Some(b)) => a < b,
                    (Some(_), None) => true,
                    _ => false,
                };
                let keep_small = low == ascending;
                if other_smaller == keep_small {
                    wires.slots[i] = other;
                }
            }
            j /= 2;
        }
        k *= 2;
    }
    Ok(())
}

/// Inclusive prefix scan over wires by pointer jumping: every wire ends up
/// with the best of the values on wires up to its own. ⌈log₂ m⌉ rounds.
pub fn prefix_best<V: Payload>(
    net: &mut Net,
    vals: Vec<Option<V>>,
    better: impl Fn(&V, &V) -> bool,
) -> Result<Vec<Option<V>>, SimError> {
    let m = vals.len();
    let mut cur = vals;
    let mut step = 1;
    while step < m {
        let msgs = (0..m - step)
            .filter_map(|i| cur[i].clone().map(|v| (i, i + step, v)))
            .collect();
        for (i, v) in wire_round(net, msgs)? {
            let replace = match &cur[i] {
                None => true,
                Some(c) => better(&v, c),
            };
            if replace {
                cur[i] = Some(v);
            }
        }
        step *= 2;
    }
    Ok(cur)
}

/// Wires hand a value to the participant they hold. One round.
pub fn to_participants<V: Payload>(
    net: &mut Net,
    wires_held: &[Option<usize>],
    host: &[usize],
    vals: Vec<Option<V>>,
) -> Result<Vec<Option<V>>, SimError> {
    let n = net.n();
    let mut out = vec![None; host.len()];
    let mut env = Vec::new();
    for (i, v) in vals.into_iter().enumerate() {
        if let (Some(q), Some(v)) = (wires_held[i], v) {
            let (a, b) = (wire_host(i, n), host[q]);
            if a == b {
                out[q] = Some(v);
            } else {
                env.push(Envelope::global(a, b, Wire(q, v)));
            }
        }
    }
    for (_, d) in net.exchange(env)? {
        out[d.body.0] = Some(d.body.1);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sorted {
    pub rank: Vec<usize>,
    pub pred: Vec<Option<usize>>,
    pub succ: Vec<Option<usize>>,
}

/// Every participant learns its rank among all keys (ties by participant
/// index) and the participants ranked just before and after it.
pub fn distributed_sort<K: Payload + Ord>(net: &mut Net, host: &[usize], keys: Vec<K>) -> Result<(Sorted, Wires<K>), SimError> {
    let mut wires = load(net, host, keys)?;
    bitonic(net, &mut wires)?;
    let held: Vec<Option<usize>> = wires.slots.iter().map(|s| s.as_ref().map(|x| x.1)).collect();
    let len = wires.len;
    // neighbors tell each other whom they hold
    let mut msgs = Vec::new();
    for i in 0..len {
        if i > 0 {
            msgs.push((i, i - 1, (true, Handle(held[i].unwrap()))));
        }
        if i + 1 < len {
            msgs.push((i, i + 1, (false, Handle(held[i].unwrap()))));
        }
    }
    let mut before = vec![None; wires.slots.len()];
    let mut after = vec![None; wires.slots.len()];
    for (i, (from_above, h)) in wire_round(net, msgs)? {
        if from_above {
            after[i] = Some(h);
        } else {
            before[i] = Some(h);
        }
    }
    let vals = (0..wires.slots.len())
        .map(|i| held[i].map(|_| (Rank(i), before[i], after[i])))
        .collect();
    let got = to_participants(net, &held, host, vals)?;
    let mut sorted = Sorted {
        rank: vec![0; host.len()],
        pred: vec![None; host.len()],
        succ: vec![None; host.len()],
    };
    for (q, v) in got.into_iter().enumerate() {
        let (Rank(r), b, a) = v.expect("every participant holds a wire");
        sorted.rank[q] = r;
        sorted.pred[q] = b.map(|h| h.0);
        sorted.succ[q] = a.map(|h| h.0);
    }
    Ok((sorted, wires))
}

/// A wire position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rank(pub usize);

impl Payload for Rank {
    fn bits(&self, w: &Widths) -> u32 {
        w.id + 2
    }
}
