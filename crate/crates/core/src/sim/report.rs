//! Round and message accounting.

use super::word::WordDims;
use super::SimConfig;
use serde::{Deserialize, Serialize};

/// Accounting for one simulated program execution.
///
/// `max_edge_load` is the largest number of words that crossed any single
/// link direction in any round. The runner rejects a second same-round word
/// per direction outright, so a successful run always reports at most 1;
/// the field exists so reports state the fact rather than imply it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimReport {
    pub rounds: u64,
    pub words_sent: u64,
    pub max_edge_load: u32,
    /// Word budget in bits: `c_w * unit_bits`.
    pub word_bits: u32,
    /// Bits per field: `ceil(log2(n * (W + 1)))`.
    pub unit_bits: u32,
    pub c_w: u32,
    pub seed: u64,
}

impl SimReport {
    pub fn new(cfg: &SimConfig, dims: WordDims) -> Self {
        SimReport {
            rounds: 0,
            words_sent: 0,
            max_edge_load: 0,
            word_bits: cfg.c_w * dims.unit_bits,
            unit_bits: dims.unit_bits,
            c_w: cfg.c_w,
            seed: cfg.seed,
        }
    }

    pub(crate) fn count_send(&mut self) {
        self.words_sent += 1;
        self.max_edge_load = 1;
    }
}

/// Which cited subroutine a phase plays the role of; used by charged
/// accounting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subroutine {
    /// Weighted single-source shortest paths.
    Sssp,
    /// All-pairs shortest paths.
    Apsp,
    /// Everything else runs at its measured cost.
    Other,
}

/// Constants for charged accounting. When enabled, a phase tagged `Sssp`
/// costs `ceil(c_sssp * (sqrt(n) * D^(1/4) + D))` charged rounds and a phase
/// tagged `Apsp` costs `ceil(c_apsp * n)`, instead of its measured rounds.
/// Measured rounds always remain the primary figure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChargingConfig {
    pub c_sssp: f64,
    pub c_apsp: f64,
}

impl Default for ChargingConfig {
    fn default() -> Self {
        ChargingConfig {
            c_sssp: 1.0,
            c_apsp: 1.0,
        }
    }
}

impl ChargingConfig {
    pub fn charge(&self, kind: Subroutine, n: usize, diameter_est: u64, measured: u64) -> u64 {
        let nf = n as f64;
        let d = diameter_est.max(1) as f64;
        match kind {
            Subroutine::Sssp => (self.c_sssp * (nf.sqrt() * d.powf(0.25) + d)).ceil() as u64,
            Subroutine::Apsp => (self.c_apsp * nf).ceil() as u64,
            Subroutine::Other => measured,
        }
    }
}

/// One named phase of a multi-phase algorithm.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseReport {
    pub label: String,
    pub kind: Subroutine,
    pub report: SimReport,
}

/// Accumulates the sequential phases an algorithm executes.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PhaseLog {
    pub phases: Vec<PhaseReport>,
    /// Root eccentricity published by a tree-building phase, kept as the
    /// running diameter estimate.
    pub diameter_est: Option<u64>,
}

impl PhaseLog {
    pub fn new() -> Self {
        PhaseLog::default()
    }

    pub fn push(&mut self, label: impl Into<String>, kind: Subroutine, report: SimReport) {
        self.phases.push(PhaseReport {
            label: label.into(),
            kind,
            report,
        });
    }

    pub fn absorb(&mut self, mut other: PhaseLog) {
        self.phases.append(&mut other.phases);
        self.diameter_est = self.diameter_est.max(other.diameter_est);
    }

    pub fn note_diameter(&mut self, ecc: u64) {
        self.diameter_est = Some(self.diameter_est.map_or(ecc, |d| d.max(ecc)));
    }

    /// Total measured rounds across phases.
    pub fn rounds(&self) -> u64 {
        self.phases.iter().map(|p| p.report.rounds).sum()
    }

    pub fn words_sent(&self) -> u64 {
        self.phases.iter().map(|p| p.report.words_sent).sum()
    }

    pub fn combined(
        &self,
        n: usize,
        diameter_est: u64,
        charging: Option<&ChargingConfig>,
    ) -> CombinedReport {
        let charged_rounds = charging.map(|c| {
            self.phases
                .iter()
                .map(|p| c.charge(p.kind, n, diameter_est, p.report.rounds))
                .sum()
        });
        CombinedReport {
            rounds: self.rounds(),
            words_sent: self.words_sent(),
            max_edge_load: self
                .phases
                .iter()
                .map(|p| p.report.max_edge_load)
                .max()
                .unwrap_or(0),
            word_bits: self
                .phases
                .iter()
                .map(|p| p.report.word_bits)
                .max()
                .unwrap_or(0),
            charged_rounds,
            phases: self.phases.clone(),
        }
    }
}

/// Whole-algorithm accounting: measured rounds are primary; charged rounds
/// appear only when charging is enabled.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CombinedReport {
    pub rounds: u64,
    pub words_sent: u64,
    pub max_edge_load: u32,
    pub word_bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charged_rounds: Option<u64>,
    pub phases: Vec<PhaseReport>,
}
