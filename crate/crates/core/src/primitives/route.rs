use std::collections::HashMap;

use crate::netsim::{Envelope, Net, Payload, SimError, Widths};

/// A message addressed to a participant (virtual node) living on `to_host`.
#[derive(Debug, Clone)]
pub struct Parcel<M> {
    pub from_host: usize,
    pub to_host: usize,
    pub to: usize,
    pub body: M,
}

impl<M> Parcel<M> {
    pub fn new(from_host: usize, to_host: usize, to: usize, body: M) -> Self {
        Parcel {
            from_host,
            to_host,
            to,
            body,
        }
    }

    /// A parcel between two real nodes acting as their own participants.
    pub fn direct(from: usize, to: usize, body: M) -> Self {
        Parcel::new(from, to, to, body)
    }
}

/// A participant (virtual node) handle: owner id and index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Handle(pub usize);

impl Payload for Handle {
    fn bits(&self, w: &Widths) -> u32 {
        w.vid() + 1
    }
}

/// An index into a neighbor list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Idx(pub usize);

impl Payload for Idx {
    fn bits(&self, w: &Widths) -> u32 {
        w.idx
    }
}

#[derive(Debug, Clone)]
struct Addressed<M> {
    body: M,
}

impl<M: Payload> Payload for Addressed<M> {
    fn bits(&self, w: &Widths) -> u32 {
        // participant handle: owner id, index and a spare bit
        w.vid() + 1 + self.body.bits(w)
    }
    fn ids(&self) -> Vec<usize> {
        self.body.ids()
    }
}

/// The position tag travels with the envelope for bookkeeping only; it is not
/// part of the body and costs no bits.
#[derive(Debug, Clone)]
struct Tagged<M>(usize, M);

impl<M: Payload> Payload for Tagged<M> {
    fn bits(&self, w: &Widths) -> u32 {
        self.1.bits(w)
    }
    fn ids(&self) -> Vec<usize> {
        self.1.ids()
    }
}

/// One round of participant-to-participant traffic. Parcels between
/// participants on the same host never touch the network; parcels between
/// adjacent hosts use the local edge while its budget lasts, everything else
/// goes over the clique. The result is sorted by target participant, ties in
/// a fixed order.
pub fn deliver<M: Payload>(net: &mut Net, parcels: Vec<Parcel<M>>) -> Result<Vec<(usize, M)>, SimError> {
    let mut internal = Vec::new();
    let mut envs = Vec::with_capacity(parcels.len());
    let mut targets = Vec::with_capacity(parcels.len());
    let mut edge_use: HashMap<(usize, usize), usize> = HashMap::new();
    let lambda = net.lambda();
    for p in parcels {
        if p.from_host == p.to_host {
            internal.push((p.to, p.body));
            continue;
        }
        targets.push(p.to);
        let body = Tagged(targets.len() - 1, Addressed { body: p.body });
        let mut local = false;
        if net.is_neighbor(p.from_host, p.to_host) {
            let used = edge_use.entry((p.from_host, p.to_host)).or_insert(0);
            if *used < lambda {
                *used += 1;
                local = true;
            }
        }
        envs.push(if local {
            Envelope::local(p.from_host, p.to_host, body)
        } else {
            Envelope::global(p.from_host, p.to_host, body)
        });
    }
    let got = net.exchange(envs)?;
    let mut out: Vec<(usize, M)> = got
        .into_iter()
        .map(|(_, d)| (targets[d.body.0], d.body.1.body))
        .collect();
    out.extend(internal);
    out.sort_by_key(|x| x.0);
    Ok(out)
}
