use super::ViolationKind;
use serde::{Deserialize, Serialize};
use std::io::Write;

pub const METRICS_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundStats {
    pub round: usize,
    pub local_msgs: usize,
    pub global_msgs: usize,
    /// Largest number of global messages any node received this round.
    pub max_in: usize,
    /// Largest number of global messages any node sent this round.
    pub max_out: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverflowEvent {
    pub round: usize,
    pub node: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub schema_version: u32,
    pub rounds: usize,
    pub local_msgs: usize,
    pub global_msgs: usize,
    pub max_in: usize,
    pub max_out: usize,
    pub per_round: Vec<RoundStats>,
    pub overflow_events: Vec<OverflowEvent>,
}

impl Metrics {
    pub(crate) fn record(&mut self, s: RoundStats) {
        self.schema_version = METRICS_SCHEMA_VERSION;
        self.rounds = s.round;
        self.local_msgs += s.local_msgs;
        self.global_msgs += s.global_msgs;
        self.max_in = self.max_in.max(s.max_in);
        self.max_out = self.max_out.max(s.max_out);
        self.per_round.push(s);
    }

    /// Largest per-node global load seen in any round.
    pub fn peak_global_load(&self) -> usize {
        self.max_in.max(self.max_out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metrics serialize")
    }

    /// One row per round: round, local_msgs, global_msgs, max_in, max_out.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "# schema_version={}", METRICS_SCHEMA_VERSION)?;
        writeln!(w, "round,local_msgs,global_msgs,max_in,max_out")?;
        for r in &self.per_round {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.round, r.local_msgs, r.global_msgs, r.max_in, r.max_out
            )?;
        }
        Ok(())
    }
}
