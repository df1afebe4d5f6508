//! Path and cycle construction on top of the weight-computing algorithms.
//!
//! Routing-table mode precomputes, per input-path edge, a next-hop pointer
//! at every node; when an edge fails, the notification climbs the input
//! path to `s` (at most `h_st` rounds) and the message then follows the
//! pointers (at most `h_rep` more). On-the-fly mode for undirected graphs
//! stores the per-edge deviation witness only at `s`; after notification,
//! `s` floods the witness down its shortest-path tree, the deviation vertex
//! claims the tree path back up, and the message is routed — three
//! `h_rep`-bounded stages, with O(1) persistent entries at every node other
//! than `s`. Cycle construction materializes a witnessed minimum cycle
//! through a vertex from all-pairs next-hop tables in `h_cyc` token rounds.

mod programs;
mod tables;

use programs::{assemble_trace, TokenWalk};
pub use programs::{onfly_construct_undirected, route_failover, OnFlyOutcome};
pub use tables::{build_rpath_tables, undirected_onfly_inputs, RouteSet, RpAlgo};

use crate::graph::{Graph, PathSpec, Weight};
use crate::mwc::{CycleResult, CycleWitness};
use crate::primitives::apsp;
use crate::rpaths::{AlgoError, AlgoRun};
use crate::sim::{PhaseLog, SimConfig, Subroutine};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// One routed traversal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RouteTrace {
    /// The failed edge (paths) or the target vertex (cycles).
    pub context: String,
    pub vertices: Vec<usize>,
    pub rounds: u64,
    pub weight: Weight,
    /// Largest number of persistent entries at any node other than `s`
    /// (on-the-fly mode).
    pub storage_audit: Option<usize>,
}

impl RouteTrace {
    /// True when the trace visits no vertex twice.
    pub fn is_simple_path(&self) -> bool {
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// True for a closed walk that revisits only its endpoint.
    pub fn is_simple_cycle(&self) -> bool {
        let k = self.vertices.len();
        if k < 3 || self.vertices[0] != self.vertices[k - 1] {
            return false;
        }
        let mut seen = self.vertices[..k - 1].to_vec();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn uses_edge(&self, u: usize, v: usize, directed: bool) -> bool {
        self.vertices
            .windows(2)
            .any(|w| (w[0] == u && w[1] == v) || (!directed && w[0] == v && w[1] == u))
    }
}

/// Convenience: route around every possible failure with prebuilt tables.
pub fn route_all_failures(
    g: &Graph,
    p: &PathSpec,
    routes: &RouteSet,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<Vec<OnFlyOutcome>, AlgoError> {
    (0..p.h_st)
        .map(|j| {
            let (u, v) = p.edge(j);
            route_failover(g, p, routes.next.clone(), (u, v), &cfg.with_salt(500 + j as u64), log)
        })
        .collect()
}

/// Builds a cycle through `u` from an exact MWC/ANSC result. Table mode
/// first publishes every node's witness pair (`O(n)` rounds, measured); the
/// on-the-fly mode broadcasts only `u`'s partner on demand. Both then route
/// a token along all-pairs next hops, closing in `h_cyc` rounds.
pub fn construct_cycle(
    g: &Graph,
    result: &CycleResult,
    through: usize,
    onfly: bool,
    cfg: &SimConfig,
) -> Result<AlgoRun<Option<RouteTrace>>, AlgoError> {
    let mut log = PhaseLog::new();
    let witness = result
        .ansc_witness
        .as_ref()
        .and_then(|w| w[through].clone());
    let Some(witness) = witness else {
        return Ok(AlgoRun { result: None, log });
    };

    // Routing orientation: next hops toward every target. Undirected tables
    // provide them directly; directed graphs run the reversed pass (the
    // assumed APSP routing tables).
    let table = apsp(g, g.directed(), &cfg.with_salt(91), &mut log)?;

    if !onfly {
        // Publish all n witness pairs over a tree: O(n + D) rounds.
        let bfs = crate::primitives::bfs_tree(g, 0, true, &cfg.with_salt(92), &mut log)?;
        let tree = Arc::new(crate::primitives::Tree::from_bfs(0, &bfs));
        let items: Vec<Vec<crate::primitives::AggItem>> = (0..g.n())
            .map(|v| match result.ansc_witness.as_ref().and_then(|w| w[v].clone()) {
                Some(CycleWitness::DirectedClose { u, .. }) => {
                    vec![crate::primitives::AggItem::new(v as u64, 0, [u as u64, 0])]
                }
                Some(CycleWitness::UndirectedPair { v: a, v_prime: b, .. }) => {
                    vec![crate::primitives::AggItem::new(v as u64, 0, [a as u64, b as u64])]
                }
                _ => Vec::new(),
            })
            .collect();
        crate::primitives::broadcast_aggregate(
            g,
            tree,
            crate::primitives::AggMode::Concat,
            items,
            true,
            &cfg.with_salt(93),
            &mut log,
        )?;
    } else {
        // u broadcasts its own pair on demand.
        programs::flood_small(g, through, &cfg.with_salt(94), &mut log)?;
    }

    // Leg plan: every node's per-leg next hop comes from its own table row.
    let (leg_targets, legged_next): (Vec<usize>, Vec<Vec<Option<usize>>>) = match witness {
        CycleWitness::DirectedClose { u, v } => {
            debug_assert_eq!(v, through);
            let next: Vec<Vec<Option<usize>>> = (0..g.n())
                .map(|x| {
                    vec![
                        if x == u { None } else { table.parent_toward(u, x) },
                        if x == u { Some(v) } else { None },
                    ]
                })
                .collect();
            (vec![u, v], next)
        }
        CycleWitness::UndirectedPair { u, v, v_prime } => {
            debug_assert_eq!(u, through);
            let next: Vec<Vec<Option<usize>>> = (0..g.n())
                .map(|x| {
                    vec![
                        if x == v { None } else { table.parent_toward(v, x) },
                        if x == v { Some(v_prime) } else { None },
                        if x == u { None } else { table.parent_toward(u, x) },
                    ]
                })
                .collect();
            (vec![v, v_prime, u], next)
        }
        CycleWitness::NonTreeEdge { .. } => {
            return Err(AlgoError::MissingWitness(
                "approximate results carry no constructible witness".into(),
            ));
        }
    };

    let walk = TokenWalk {
        next: Arc::new(legged_next),
        leg_targets: Arc::new(leg_targets),
        start: through,
        hop_budget: 4 * g.n() as u64,
    };
    let run = crate::sim::run_program(g, &walk, &cfg.with_salt(95), tables::route_dims(g))?;
    log.push("cycle-token", Subroutine::Other, run.report.clone());
    let (vertices, weight) = assemble_trace(g, through, &run.outputs, through)?;

    Ok(AlgoRun {
        result: Some(RouteTrace {
            context: format!("cycle-through-{through}"),
            vertices,
            rounds: run.report.rounds,
            weight,
            storage_audit: onfly.then_some(2),
        }),
        log,
    })
}
