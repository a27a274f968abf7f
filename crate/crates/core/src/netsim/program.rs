use super::{Channel, Delivery, Envelope, Metrics, Net, Payload, SimConfig, SimError};
use crate::graphs::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outgoing<M> {
    pub dst: usize,
    pub channel: Channel,
    pub body: M,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step<M> {
    pub outbox: Vec<Outgoing<M>>,
    pub halted: bool,
}

impl<M> Step<M> {
    pub fn halt() -> Self {
        Step {
            outbox: Vec::new(),
            halted: true,
        }
    }

    pub fn send(outbox: Vec<Outgoing<M>>) -> Self {
        Step {
            outbox,
            halted: false,
        }
    }
}

/// A per-node state machine. `step` sees only the node's own state and the
/// messages delivered to it at the start of the round.
pub trait NodeProgram: Sized {
    type Msg: Payload;
    type Output;

    fn init(id: usize, n: usize, neighbors: &[(usize, u64)], config: &SimConfig) -> Self;
    fn step(&mut self, round: usize, inbox: &[Delivery<Self::Msg>]) -> Step<Self::Msg>;
    fn output(&self) -> Self::Output;
}

/// Executes `P` on every node until all nodes have halted.
pub fn run<P: NodeProgram>(
    g: &WeightedGraph,
    config: &SimConfig,
) -> Result<(Vec<P::Output>, Metrics), SimError> {
    let n = g.n();
    if n == 0 {
        return Err(SimError::Contract("empty graph".into()));
    }
    let mut net = Net::new(g, config)?;
    let mut nodes: Vec<P> = (0..n)
        .map(|v| P::init(v, n, g.neighbors(v), config))
        .collect();
    let mut halted = vec![false; n];
    let mut inboxes: Vec<Vec<Delivery<P::Msg>>> = vec![Vec::new(); n];
    loop {
        let round = net.round() + 1;
        let mut out = Vec::new();
        for v in 0..n {
            if halted[v] {
                continue;
            }
            let inbox = std::mem::take(&mut inboxes[v]);
            let step = nodes[v].step(round, &inbox);
            halted[v] = step.halted;
            out.extend(step.outbox.into_iter().map(|o| Envelope {
                src: v,
                dst: o.dst,
                channel: o.channel,
                body: o.body,
            }));
        }
        let delivered = net.exchange(out)?;
        if halted.iter().all(|&h| h) {
            break;
        }
        for (dst, d) in delivered {
            inboxes[dst].push(d);
        }
    }
    let outputs = nodes.iter().map(|p| p.output()).collect();
    Ok((outputs, net.into_metrics()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netsim::{KnowledgeModel, OverflowPolicy, ViolationKind};

    fn path(n: usize) -> WeightedGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    struct Halt;
    impl NodeProgram for Halt {
        type Msg = ();
        type Output = ();
        fn init(_: usize, _: usize, _: &[(usize, u64)], _: &SimConfig) -> Self {
            Halt
        }
        fn step(&mut self, _: usize, _: &[Delivery<()>]) -> Step<()> {
            Step::halt()
        }
        fn output(&self) {}
    }

    #[test]
    fn immediate_halt_is_one_round() {
        let (_, m) = run::<Halt>(&path(5), &SimConfig::default()).unwrap();
        assert_eq!(m.rounds, 1);
        assert_eq!(m.local_msgs + m.global_msgs, 0);
    }

    /// Local flood from node 0; records the round in which the informing message was sent.
    struct Flood {
        id: usize,
        nbrs: Vec<usize>,
        reached: Option<usize>,
        sent: bool,
    }
    impl NodeProgram for Flood {
        type Msg = ();
        type Output = Option<usize>;
        fn init(id: usize, _: usize, nb: &[(usize, u64)], _: &SimConfig) -> Self {
            Flood {
                id,
                nbrs: nb.iter().map(|e| e.0).collect(),
                reached: (id == 0).then_some(0),
                sent: false,
            }
        }
        fn step(&mut self, round: usize, inbox: &[Delivery<()>]) -> Step<()> {
            if self.reached.is_none() && !inbox.is_empty() {
                self.reached = Some(round - 1);
            }
            if self.reached.is_some() && !self.sent {
                self.sent = true;
                let out = self
                    .nbrs
                    .iter()
                    .map(|&d| Outgoing {
                        dst: d,
                        channel: Channel::Local,
                        body: (),
                    })
                    .collect();
                return Step {
                    outbox: out,
                    halted: self.id != 0 && self.nbrs.len() == 1,
                };
            }
            Step {
                outbox: Vec::new(),
                halted: self.sent,
            }
        }
        fn output(&self) -> Option<usize> {
            self.reached
        }
    }

    #[test]
    fn flood_reaches_path_end_in_three_rounds() {
        let (out, _) = run::<Flood>(&path(4), &SimConfig::default()).unwrap();
        assert_eq!(out, vec![Some(0), Some(1), Some(2), Some(3)]);
    }

    struct Ring {
        id: usize,
        n: usize,
        extra: usize,
        got: Vec<usize>,
    }
    impl NodeProgram for Ring {
        type Msg = usize;
        type Output = Vec<usize>;
        fn init(id: usize, n: usize, _: &[(usize, u64)], cfg: &SimConfig) -> Self {
            // the seed doubles as the number of dummy sends in these tests
            Ring {
                id,
                n,
                extra: cfg.seed as usize,
                got: Vec::new(),
            }
        }
        fn step(&mut self, round: usize, inbox: &[Delivery<usize>]) -> Step<usize> {
            self.got.extend(inbox.iter().map(|d| d.body));
            if round > 1 {
                return Step::halt();
            }
            let mut out = vec![Outgoing {
                dst: (self.id + 1) % self.n,
                channel: Channel::Global,
                body: self.id,
            }];
            // dummy sends below budget to the node's own far side
            for k in 0..self.extra {
                out.push(Outgoing {
                    dst: (self.id + 2 + k) % self.n,
                    channel: Channel::Global,
                    body: usize::MAX - 1,
                });
            }
            Step::send(out)
        }
        fn output(&self) -> Vec<usize> {
            self.got.clone()
        }
    }

    fn ring_graph(n: usize) -> WeightedGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    #[test]
    fn ring_send_loads_are_one() {
        let (out, m) = run::<Ring>(&ring_graph(16), &SimConfig::default()).unwrap();
        assert_eq!(m.max_in, 1);
        assert_eq!(m.max_out, 1);
        assert!(m.overflow_events.is_empty());
        for (v, got) in out.iter().enumerate() {
            assert_eq!(got, &vec![(v + 15) % 16]);
        }
    }

    #[test]
    fn deterministic_metrics() {
        let a = run::<Ring>(&ring_graph(16), &SimConfig::default()).unwrap();
        let b = run::<Ring>(&ring_graph(16), &SimConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dummy_sends_below_budget_do_not_disturb_others() {
        let (base, _) = run::<Ring>(&ring_graph(16), &SimConfig::with_seed(0)).unwrap();
        let (noisy, _) = run::<Ring>(&ring_graph(16), &SimConfig::with_seed(3)).unwrap();
        for v in 0..16 {
            let real: Vec<usize> = noisy[v].iter().copied().filter(|&x| x < 16).collect();
            assert_eq!(real, base[v]);
        }
    }

    #[test]
    fn ncc0_rejects_unknown_destination() {
        let cfg = SimConfig {
            knowledge_model: KnowledgeModel::Ncc0,
            ..Default::default()
        };
        // on a path, node i + 1 mod n is a neighbor except for the wrap
        let err = run::<Ring>(&path(5), &cfg).unwrap_err();
        assert!(matches!(err, SimError::UnknownDestination { src: 4, dst: 0, .. }));
    }

    #[test]
    fn fail_fast_reports_round_node_kind() {
        struct Burst(usize, usize);
        impl NodeProgram for Burst {
            type Msg = ();
            type Output = ();
            fn init(id: usize, n: usize, _: &[(usize, u64)], _: &SimConfig) -> Self {
                Burst(id, n)
            }
            fn step(&mut self, _: usize, _: &[Delivery<()>]) -> Step<()> {
                let out = if self.0 == 3 {
                    (0..self.1)
                        .filter(|&d| d != 3)
                        .map(|d| Outgoing {
                            dst: d,
                            channel: Channel::Global,
                            body: (),
                        })
                        .collect()
                } else {
                    Vec::new()
                };
                Step { outbox: out, halted: true }
            }
            fn output(&self) {}
        }
        let cfg = SimConfig {
            gamma_factor: 1,
            ..Default::default()
        };
        let err = run::<Burst>(&ring_graph(16), &cfg).unwrap_err();
        assert_eq!(
            err,
            SimError::Capacity {
                round: 1,
                node: 3,
                kind: ViolationKind::GlobalSend
            }
        );
        let drop = SimConfig {
            gamma_factor: 1,
            overflow_policy: OverflowPolicy::DropBySenderId,
            ..Default::default()
        };
        let (_, m) = run::<Burst>(&ring_graph(16), &drop).unwrap();
        assert_eq!(m.global_msgs, 4);
        assert_eq!(m.overflow_events.len(), 1);
    }
}
