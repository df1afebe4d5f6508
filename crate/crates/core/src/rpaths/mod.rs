//! Distributed replacement paths and second simple shortest path.
//!
//! Four algorithm families cover the graph classes:
//!
//! * [`rpaths_dirw_apsp`] — directed weighted, by simulating all-pairs
//!   shortest paths on an enlarged graph whose designated vertex pairs
//!   encode per-edge replacement weights.
//! * [`rpaths_iterated_sssp`] — directed (weighted or unweighted), one
//!   shortest-path computation per path edge with that edge forbidden.
//! * [`rpaths_dirunw_sampling`] — directed unweighted, hop-limited BFS for
//!   short detours plus sampled long-detour stitching; exact with high
//!   probability over the sampled set.
//! * [`rpaths_dirw_approx`] — the sampling skeleton with scaled
//!   `(1+eps)`-approximate hop-limited distances.
//! * [`rpaths_undirected`] — undirected (weighted or unweighted), two
//!   shortest-path trees plus a one-round neighbor exchange.

mod dirw_apsp;
mod iter_sssp;
mod sampling;
mod undirected;

pub use dirw_apsp::rpaths_dirw_apsp;
pub use iter_sssp::rpaths_iterated_sssp;
pub use sampling::{rpaths_dirunw_sampling, rpaths_dirw_approx, SamplingOptions};
pub use undirected::rpaths_undirected;

use crate::graph::{Graph, GraphError, PathSpec, Weight};
use crate::sim::{PhaseLog, SimError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Algorithm-level failures.
#[derive(Debug, Error)]
pub enum AlgoError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("missing witness for {0}")]
    MissingWitness(String),
    #[error("routing pointer cycle at node {0}")]
    PointerCycle(usize),
}

/// A computed result together with its round accounting.
#[derive(Debug, Clone)]
pub struct AlgoRun<T> {
    pub result: T,
    pub log: PhaseLog,
}

/// How a replacement path deviates from the input path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RpWitness {
    /// Leaves the path at `v_a`, rejoins at `v_b` (detour routed toward
    /// `v_b`).
    Detour { v_a: usize, v_b: usize },
    /// Detour stitched through sampled waypoints, in order `v_a`,
    /// `waypoints...`, `v_b`.
    Overlay {
        v_a: usize,
        v_b: usize,
        waypoints: Vec<usize>,
    },
    /// Undirected characterization: trees meet at `u` (type 1) or cross the
    /// edge `(u, v)` (type 2).
    UndirType1 { u: usize },
    UndirType2 { u: usize, v: usize },
    /// Replacement is the shortest-path tree toward `t` of the per-edge run.
    TreeToT,
}

/// Replacement data for one path edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReplacement {
    /// Weight in units of `1 / scale` (`scale = 1` for exact algorithms);
    /// the sentinel (times scale) when no replacement exists.
    pub weight: Weight,
    pub witness: Option<RpWitness>,
    /// Hop length of the witnessed path, when the algorithm tracks it.
    pub hops: Option<u64>,
}

/// Per-edge replacement weights for an input path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RPathsResult {
    pub per_edge: Vec<EdgeReplacement>,
    /// Weights are `weight / scale`; exact algorithms use scale 1, the
    /// approximation reports exact rationals over a fixed denominator.
    pub scale: Weight,
    pub sentinel: Weight,
}

impl RPathsResult {
    /// Max hop length over witnessed finite replacement paths.
    pub fn h_rep(&self) -> u64 {
        self.per_edge
            .iter()
            .filter(|e| e.witness.is_some())
            .filter_map(|e| e.hops)
            .max()
            .unwrap_or(0)
    }

    /// Scaled weight of the second simple shortest path: the minimum over
    /// existing replacements (sentinel * scale when none exists).
    pub fn sisp2(&self) -> Weight {
        self.per_edge
            .iter()
            .filter(|e| e.witness.is_some())
            .map(|e| e.weight)
            .min()
            .unwrap_or(self.sentinel * self.scale)
    }

    /// True when the indexed edge has no replacement (no witness).
    pub fn is_missing(&self, j: usize) -> bool {
        self.per_edge[j].witness.is_none()
    }
}

/// Minimum over per-edge replacement weights (sentinel when all are).
pub fn sisp2(r: &RPathsResult) -> Weight {
    r.sisp2()
}

/// Data the reconstruction layer needs beyond the weights.
#[derive(Debug, Clone)]
pub enum RoutingSeed {
    /// Iterated SSSP: per path edge, per node, the next hop toward `t` in
    /// the graph minus that edge.
    NextToT(Vec<Vec<Option<usize>>>),
    /// APSP reduction: replacements rejoin through `v_b`; next hops toward
    /// `v_b` come from a routing-orientation pass over `G - P_st`.
    DetourTargets,
    /// Sampling algorithm: the source set and hop budget a routing pass
    /// must re-explore.
    SampledSources { sources: Vec<usize>, h: u64 },
    /// Undirected: per node, (next toward t, parent toward s, hops, alpha).
    UndirTrees {
        s_parent: Vec<Option<usize>>,
        t_parent: Vec<Option<usize>>,
    },
    None,
}

/// Full outcome of one replacement-path computation.
#[derive(Debug, Clone)]
pub struct RPathsOutcome {
    pub result: RPathsResult,
    pub routing: RoutingSeed,
}

pub(crate) fn validate_input(g: &Graph, p: &PathSpec) -> Result<(), AlgoError> {
    let revalidated = PathSpec::new(g, p.vertices.clone())
        .map_err(|e| AlgoError::InvalidInput(format!("path spec rejected: {e}")))?;
    if &revalidated != p {
        return Err(AlgoError::InvalidInput(
            "path spec fields disagree with the graph".into(),
        ));
    }
    Ok(())
}
