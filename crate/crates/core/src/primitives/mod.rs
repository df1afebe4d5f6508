//! Distributed building blocks, each a [`NodeProgram`] for the simulator:
//! single-root BFS trees, pipelined multi-source BFS (hop-limited, top-R
//! source detection, and delayed/weighted variants), Bellman-Ford SSSP,
//! APSP with first-hop tracking over real or simulated topologies, tree
//! aggregation, and seeded vertex sampling.

mod approx;
mod apsp;
mod bfs;
mod broadcast;
mod multi_bfs;
mod sampling;
mod sssp;

pub use approx::{approx_msssp, level_count, scaled_cap, ApproxEstimates};
pub use apsp::{apsp, apsp_virtual, ApspOutput, ApspRow, ApspTable, VirtualTopology, NO_VERT};
pub use bfs::{bfs_tree, BfsOutput, BfsTreeProgram};
pub use broadcast::{
    broadcast_aggregate, broadcast_aggregate_retaining, broadcast_aggregate_with_dims, AggItem,
    AggMode, AggOutput, Tree,
};
pub use multi_bfs::{
    delayed_bfs, hop_limited_bfs, source_detection, CandidateRules, CycleCandidate, DetectEntry,
    DetectOutput, MultiSourceBfs,
};
pub use sampling::{hitting_prob, sample_vertices};
pub use sssp::{sssp, sssp_with_meta, SsspOutput, SsspProgram};

use crate::graph::Graph;
use crate::sim::{
    run_program, NodeProgram, PhaseLog, SimConfig, SimError, SimRun, Subroutine, WordDims,
};

/// Runs one program as a named phase, appending its accounting to `log`.
pub fn run_phase<P: NodeProgram>(
    g: &Graph,
    prog: &P,
    cfg: &SimConfig,
    dims: WordDims,
    log: &mut PhaseLog,
    label: &str,
    kind: Subroutine,
) -> Result<Vec<P::Output>, SimError> {
    let SimRun { report, outputs } = run_program(g, prog, cfg, dims)?;
    log.push(label, kind, report);
    Ok(outputs)
}

/// Shorthand for the default word dimensions of a graph.
pub fn dims_for(g: &Graph) -> WordDims {
    WordDims::new(g.n(), g.w_max())
}
