//! Round-synchronous hybrid network: local edges with a per-edge message cap
//! and a global clique with per-node send and receive caps.

mod engine;
mod metrics;
mod program;

pub use engine::{enforce_capacities, Net, Violation};
pub use metrics::{Metrics, OverflowEvent, RoundStats, METRICS_SCHEMA_VERSION};
pub use program::{run, NodeProgram, Outgoing, Step};

use crate::graphs::clog2;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverflowPolicy {
    FailFast,
    DropBySenderId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KnowledgeModel {
    #[serde(rename = "NCC")]
    Ncc,
    #[serde(rename = "NCC0")]
    Ncc0,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    /// Messages per local edge per direction per round.
    pub lambda: usize,
    /// γ = gamma_factor·⌈log₂ n⌉ global sends and receives per node per round.
    pub gamma_factor: usize,
    /// β in the message size bound B = β·(word size).
    pub payload_beta: usize,
    pub overflow_policy: OverflowPolicy,
    pub knowledge_model: KnowledgeModel,
    pub seed: u64,
    /// Defaults to 50·max(⌈log₂ n⌉, 4)².
    pub round_limit: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            lambda: 2,
            gamma_factor: 8,
            payload_beta: 8,
            overflow_policy: OverflowPolicy::FailFast,
            knowledge_model: KnowledgeModel::Ncc,
            seed: 0,
            round_limit: None,
        }
    }
}

impl SimConfig {
    pub fn with_seed(seed: u64) -> Self {
        SimConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn gamma(&self, n: usize) -> usize {
        self.gamma_factor * clog2(n)
    }

    /// 50·⌈log₂ n⌉², with the log floored at 4 so that the constant-length
    /// stages of the longer pipelines fit on tiny graphs.
    pub fn round_limit_for(&self, n: usize) -> usize {
        let l = clog2(n).max(4);
        self.round_limit.unwrap_or(50 * l * l)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.lambda == 0 || self.gamma_factor == 0 || self.payload_beta == 0 {
            return Err(SimError::Config(
                "lambda, gamma_factor and payload_beta must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Field widths in bits used to size message bodies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Widths {
    /// A node id: ⌈log₂ n⌉.
    pub id: u32,
    /// A signed distance: ⌈log₂(n·W+1)⌉ plus a sign bit.
    pub weight: u32,
    /// Index part of a virtual id: ⌈log₂ Δ⌉.
    pub idx: u32,
}

impl Widths {
    pub fn new(n: usize, max_weight: u64, max_degree: usize) -> Self {
        let dist_bound = (n as u128) * (max_weight.max(1) as u128) + 1;
        let wbits = 128 - (dist_bound - 1).leading_zeros();
        Widths {
            id: clog2(n) as u32,
            weight: wbits.max(1) + 1,
            idx: clog2(max_degree.max(2)) as u32,
        }
    }

    /// A virtual node handle: owner id plus index.
    pub fn vid(&self) -> u32 {
        self.id + self.idx
    }

    /// Word size the payload bound is a multiple of: an id or a signed
    /// distance, at least 4 bits so that tiny instances can carry a handle.
    pub fn word(&self) -> u32 {
        self.id.max(self.weight).max(4)
    }
}

/// A message body with a serialized size.
pub trait Payload: Clone {
    fn bits(&self, w: &Widths) -> u32;
    /// Node ids carried by the body; used for knowledge tracking under NCC0.
    fn ids(&self) -> Vec<usize> {
        Vec::new()
    }
}

impl Payload for () {
    fn bits(&self, _: &Widths) -> u32 {
        0
    }
}

impl Payload for usize {
    fn bits(&self, w: &Widths) -> u32 {
        w.id
    }
    fn ids(&self) -> Vec<usize> {
        vec![*self]
    }
}

impl Payload for u64 {
    fn bits(&self, w: &Widths) -> u32 {
        w.weight
    }
}

impl Payload for bool {
    fn bits(&self, _: &Widths) -> u32 {
        1
    }
}

impl<A: Payload, B: Payload> Payload for (A, B) {
    fn bits(&self, w: &Widths) -> u32 {
        self.0.bits(w) + self.1.bits(w)
    }
    fn ids(&self) -> Vec<usize> {
        let mut v = self.0.ids();
        v.extend(self.1.ids());
        v
    }
}

impl<A: Payload, B: Payload, C: Payload> Payload for (A, B, C) {
    fn bits(&self, w: &Widths) -> u32 {
        self.0.bits(w) + self.1.bits(w) + self.2.bits(w)
    }
    fn ids(&self) -> Vec<usize> {
        let mut v = self.0.ids();
        v.extend(self.1.ids());
        v.extend(self.2.ids());
        v
    }
}

impl<T: Payload> Payload for Option<T> {
    fn bits(&self, w: &Widths) -> u32 {
        1 + self.as_ref().map_or(0, |x| x.bits(w))
    }
    fn ids(&self) -> Vec<usize> {
        self.as_ref().map_or(Vec::new(), |x| x.ids())
    }
}

impl Payload for i64 {
    fn bits(&self, w: &Widths) -> u32 {
        w.weight
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    Local,
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope<M> {
    pub src: usize,
    pub dst: usize,
    pub channel: Channel,
    pub body: M,
}

impl<M> Envelope<M> {
    pub fn local(src: usize, dst: usize, body: M) -> Self {
        Envelope {
            src,
            dst,
            channel: Channel::Local,
            body,
        }
    }

    pub fn global(src: usize, dst: usize, body: M) -> Self {
        Envelope {
            src,
            dst,
            channel: Channel::Global,
            body,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delivery<M> {
    pub src: usize,
    pub channel: Channel,
    pub body: M,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    LocalEdge,
    GlobalSend,
    GlobalRecv,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("capacity violation in round {round} at node {node}: {kind:?}")]
    Capacity {
        round: usize,
        node: usize,
        kind: ViolationKind,
    },
    #[error("round limit {limit} exceeded")]
    RoundLimit { limit: usize },
    #[error("round {round}: message body of {bits} bits from node {node} exceeds {limit} bits")]
    PayloadTooLarge {
        round: usize,
        node: usize,
        bits: u32,
        limit: u32,
    },
    #[error("round {round}: node {src} used a local channel to non-neighbor {dst}")]
    NotIncident { round: usize, src: usize, dst: usize },
    #[error("round {round}: node {src} does not know destination {dst}")]
    UnknownDestination { round: usize, src: usize, dst: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("algorithm contract violated: {0}")]
    Contract(String),
}
