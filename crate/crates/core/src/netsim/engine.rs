use super::{
    Channel, Delivery, Envelope, KnowledgeModel, Metrics, OverflowEvent, OverflowPolicy, Payload,
    RoundStats, SimConfig, SimError, ViolationKind, Widths,
};
use crate::graphs::WeightedGraph;
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub node: usize,
    pub kind: ViolationKind,
}

/// Applies the local and global caps to one round of messages.
///
/// Returns a keep-mask over `out` and one violation record per offending
/// (node, kind). Under `DropBySenderId` the mask drops the excess: a sender
/// keeps its first messages in emission order, and a receiver keeps the
/// messages from the lowest sender ids.
pub fn enforce_capacities<M>(
    out: &[Envelope<M>],
    lambda: usize,
    gamma: usize,
    policy: OverflowPolicy,
) -> (Vec<bool>, Vec<Violation>) {
    let mut keep = vec![true; out.len()];
    let mut violations = Vec::new();
    let drop = policy == OverflowPolicy::DropBySenderId;

    let mut local: Vec<usize> = (0..out.len())
        .filter(|&i| out[i].channel == Channel::Local)
        .collect();
    local.sort_by_key(|&i| (out[i].src, out[i].dst, i));
    let mut i = 0;
    while i < local.len() {
        let key = (out[local[i]].src, out[local[i]].dst);
        let mut j = i;
        while j < local.len() && (out[local[j]].src, out[local[j]].dst) == key {
            j += 1;
        }
        if j - i > lambda {
            violations.push(Violation {
                node: key.0,
                kind: ViolationKind::LocalEdge,
            });
            if drop {
                for &k in &local[i + lambda..j] {
                    keep[k] = false;
                }
            }
        }
        i = j;
    }

    let mut global: Vec<usize> = (0..out.len())
        .filter(|&i| out[i].channel == Channel::Global)
        .collect();
    global.sort_by_key(|&i| (out[i].src, i));
    let mut i = 0;
    while i < global.len() {
        let src = out[global[i]].src;
        let mut j = i;
        while j < global.len() && out[global[j]].src == src {
            j += 1;
        }
        if j - i > gamma {
            violations.push(Violation {
                node: src,
                kind: ViolationKind::GlobalSend,
            });
            if drop {
                for &k in &global[i + gamma..j] {
                    keep[k] = false;
                }
            }
        }
        i = j;
    }

    global.retain(|&k| keep[k]);
    global.sort_by_key(|&i| (out[i].dst, out[i].src, i));
    let mut i = 0;
    while i < global.len() {
        let dst = out[global[i]].dst;
        let mut j = i;
        while j < global.len() && out[global[j]].dst == dst {
            j += 1;
        }
        if j - i > gamma {
            violations.push(Violation {
                node: dst,
                kind: ViolationKind::GlobalRecv,
            });
            if drop {
                for &k in &global[i + gamma..j] {
                    keep[k] = false;
                }
            }
        }
        i = j;
    }
    (keep, violations)
}

/// One delivered message together with its destination.
pub type Inbox<M> = Vec<(usize, Delivery<M>)>;

/// The network: topology, capacities and counters. Each call to
/// [`Net::exchange`] is one synchronous round.
pub struct Net {
    n: usize,
    adj: Vec<Vec<(usize, u64)>>,
    cfg: SimConfig,
    gamma: usize,
    widths: Widths,
    payload_limit: u32,
    round_limit: usize,
    round: usize,
    metrics: Metrics,
    known: Option<Vec<HashSet<usize>>>,
}

impl Net {
    pub fn new(g: &WeightedGraph, cfg: &SimConfig) -> Result<Net, SimError> {
        cfg.validate()?;
        let n = g.n();
        let adj: Vec<Vec<(usize, u64)>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
        let known = match cfg.knowledge_model {
            KnowledgeModel::Ncc => None,
            KnowledgeModel::Ncc0 => Some(
                (0..n)
                    .map(|v| {
                        let mut s: HashSet<usize> = adj[v].iter().map(|e| e.0).collect();
                        s.insert(v);
                        s
                    })
                    .collect(),
            ),
        };
        let widths = Widths::new(n, g.max_weight(), g.max_degree());
        Ok(Net {
            n,
            widths,
            payload_limit: cfg.payload_beta as u32 * widths.word(),
            gamma: cfg.gamma(n),
            round_limit: cfg.round_limit_for(n),
            adj,
            cfg: cfg.clone(),
            round: 0,
            metrics: Metrics::default(),
            known,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn lambda(&self) -> usize {
        self.cfg.lambda
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn widths(&self) -> &Widths {
        &self.widths
    }

    pub fn payload_limit(&self) -> u32 {
        self.payload_limit
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn metrics(&self) -> &Metrics {
        &self.metrics
    }

    pub fn into_metrics(self) -> Metrics {
        self.metrics
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    pub fn is_neighbor(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search_by_key(&v, |e| e.0).is_ok()
    }

    /// A round in which nobody sends.
    pub fn idle(&mut self) -> Result<(), SimError> {
        self.exchange::<()>(Vec::new()).map(|_| ())
    }

    /// Runs one round. Returns the delivered messages sorted by destination,
    /// then sender, then emission order.
    pub fn exchange<M: Payload>(&mut self, out: Vec<Envelope<M>>) -> Result<Inbox<M>, SimError> {
        if self.round >= self.round_limit {
            return Err(SimError::RoundLimit {
                limit: self.round_limit,
            });
        }
        self.round += 1;
        let round = self.round;
        for e in &out {
            if e.dst >= self.n || e.src >= self.n {
                return Err(SimError::Contract(format!(
                    "round {round}: message {} -> {} outside 0..{}",
                    e.src, e.dst, self.n
                )));
            }
            let bits = e.body.bits(&self.widths);
            if bits > self.payload_limit {
                return Err(SimError::PayloadTooLarge {
                    round,
                    node: e.src,
                    bits,
                    limit: self.payload_limit,
                });
            }
            match e.channel {
                Channel::Local => {
                    if !self.is_neighbor(e.src, e.dst) {
                        return Err(SimError::NotIncident {
                            round,
                            src: e.src,
                            dst: e.dst,
                        });
                    }
                }
                Channel::Global => {
                    if let Some(known) = &self.known {
                        if !known[e.src].contains(&e.dst) {
                            return Err(SimError::UnknownDestination {
                                round,
                                src: e.src,
                                dst: e.dst,
                            });
                        }
                    }
                }
            }
        }
        let (keep, violations) =
            enforce_capacities(&out, self.cfg.lambda, self.gamma, self.cfg.overflow_policy);
        for v in &violations {
            self.metrics.overflow_events.push(OverflowEvent {
                round,
                node: v.node,
                kind: v.kind,
            });
        }
        if self.cfg.overflow_policy == OverflowPolicy::FailFast {
            if let Some(v) = violations.first() {
                return Err(SimError::Capacity {
                    round,
                    node: v.node,
                    kind: v.kind,
                });
            }
        }
        let mut delivered: Vec<(usize, usize, usize, Envelope<M>)> = out
            .into_iter()
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .map(|(i, e)| (e.dst, e.src, i, e))
            .collect();
        delivered.sort_unstable_by_key(|t| (t.0, t.1, t.2));

        let mut stats = RoundStats {
            round,
            ..Default::default()
        };
        let mut send_count: Vec<(usize, usize)> = Vec::new();
        let mut i = 0;
        while i < delivered.len() {
            let dst = delivered[i].0;
            let mut inc = 0;
            while i < delivered.len() && delivered[i].0 == dst {
                match delivered[i].3.channel {
                    Channel::Local => stats.local_msgs += 1,
                    Channel::Global => {
                        stats.global_msgs += 1;
                        inc += 1;
                        send_count.push((delivered[i].1, 1));
                    }
                }
                i += 1;
            }
            stats.max_in = stats.max_in.max(inc);
        }
        send_count.sort_unstable();
        let mut i = 0;
        while i < send_count.len() {
            let mut j = i;
            while j < send_count.len() && send_count[j].0 == send_count[i].0 {
                j += 1;
            }
            stats.max_out = stats.max_out.max(j - i);
            i = j;
        }
        self.metrics.record(stats);

        if let Some(known) = &mut self.known {
            for (dst, src, _, e) in &delivered {
                known[*dst].insert(*src);
                known[*dst].extend(e.body.ids());
            }
        }
        Ok(delivered
            .into_iter()
            .map(|(dst, _, _, e)| {
                (
                    dst,
                    Delivery {
                        src: e.src,
                        channel: e.channel,
                        body: e.body,
                    },
                )
            })
            .collect())
    }
}
