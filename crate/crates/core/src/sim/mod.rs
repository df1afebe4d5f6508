//! Deterministic synchronous-round network simulator.
//!
//! The simulator executes a [`NodeProgram`] on every vertex of a graph.
//! Communication follows the usual synchronous contract: in each round a
//! node may send at most one bounded word along each incident link direction
//! (links are bidirectional regardless of edge orientation), and the words
//! sent in round `r` form the inboxes of round `r + 1`. The per-word budget
//! is `B = c_w * ceil(log2(n * (W + 1)))` bits, enforced at send time, never
//! merely measured.
//!
//! Execution is deterministic: nodes are evaluated in id order, inboxes are
//! sorted by sender, and each node draws randomness from its own stream
//! seeded by `mix(global seed, phase salt, node id)`.

mod report;
mod rng;
mod runner;
mod word;

pub use report::{ChargingConfig, CombinedReport, PhaseLog, PhaseReport, SimReport, Subroutine};
pub use rng::{mix_seed, NodeRng};
pub use runner::{run_program, InitCtx, LocalView, NodeProgram, RoundCtx, SimRun};
pub use word::{Word, WordDims};

use thiserror::Error;

/// Simulator configuration.
#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Global seed; per-node streams derive from it.
    pub seed: u64,
    /// Phase salt mixed into per-node seeds so sequential phases draw
    /// independent randomness.
    pub salt: u64,
    /// Word-size constant: a word carries at most `c_w` fields of
    /// `ceil(log2(n(W+1)))` bits each.
    pub c_w: u32,
    /// Hard round budget; exceeding it is an error.
    pub max_rounds: u64,
    /// Jump the round counter over idle stretches where only edge-delay
    /// timers are pending. Reported rounds are identical either way.
    pub virtual_time: bool,
}

impl SimConfig {
    pub fn new(seed: u64) -> Self {
        SimConfig {
            seed,
            salt: 0,
            c_w: 4,
            max_rounds: default_budget(),
            virtual_time: false,
        }
    }

    pub fn with_salt(&self, salt: u64) -> Self {
        let mut c = self.clone();
        c.salt = salt;
        c
    }

    pub fn with_virtual_time(&self, on: bool) -> Self {
        let mut c = self.clone();
        c.virtual_time = on;
        c
    }
}

/// Default round budget, overridable via the `CONGEST_BUDGET` env var.
pub fn default_budget() -> u64 {
    std::env::var("CONGEST_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(8_000_000)
}

/// Simulation failures. Bandwidth violations are hard errors naming the
/// node, link, and round.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("bandwidth violation at round {round}: node {node} sent a second word to {neighbor}")]
    DoubleSend {
        node: usize,
        neighbor: usize,
        round: u64,
    },
    #[error(
        "bandwidth violation at round {round}: node {node} -> {neighbor} word of {fields} fields \
         exceeds {max_fields} ({bits} > {max_bits} bits)"
    )]
    WordTooWide {
        node: usize,
        neighbor: usize,
        round: u64,
        fields: usize,
        max_fields: u32,
        bits: u32,
        max_bits: u32,
    },
    #[error(
        "bandwidth violation at round {round}: field {value} from node {node} does not fit in \
         {unit_bits} bits"
    )]
    FieldTooWide {
        node: usize,
        round: u64,
        value: u64,
        unit_bits: u32,
    },
    #[error("node {node} sent to {neighbor}, which is not an incident link")]
    NotALink { node: usize, neighbor: usize },
    #[error("round budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("zero-delay relaxation did not converge within {0} sub-iterations")]
    ZeroRelaxDiverged(usize),
}

#[cfg(test)]
mod tests;
