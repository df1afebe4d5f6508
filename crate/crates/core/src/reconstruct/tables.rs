//! Routing-table construction per algorithm family.

use crate::graph::{Graph, PathSpec};
use crate::primitives::{apsp_virtual, hop_limited_bfs, ApspTable, VirtualTopology};
use crate::rpaths::{
    rpaths_dirunw_sampling, rpaths_dirw_apsp, rpaths_iterated_sssp, rpaths_undirected, AlgoError,
    RPathsOutcome, RoutingSeed, RpWitness, SamplingOptions,
};
use crate::sim::{
    InitCtx, LocalView, NodeProgram, PhaseLog, RoundCtx, SimConfig, Subroutine, Word, WordDims,
};
use std::collections::VecDeque;
use std::sync::Arc;

/// Replacement-path algorithms that support witness-based construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpAlgo {
    DirwApsp,
    IterSssp,
    DirunwSample,
    Undirected,
}

/// Routing tables plus the hop metadata of the paths they actually encode.
#[derive(Debug, Clone)]
pub struct RouteSet {
    /// next[node][edge j].
    pub next: Arc<Vec<Vec<Option<usize>>>>,
    pub per_edge_hops: Vec<Option<u64>>,
    /// For undirected on-the-fly mode: per edge, (deviation u, partner or n).
    pub undir_witnesses: Option<Vec<Option<(usize, usize)>>>,
    pub s_parent: Option<Arc<Vec<Option<usize>>>>,
    pub t_parent: Option<Arc<Vec<Option<usize>>>>,
}

impl RouteSet {
    /// Max hop length over the table-encoded replacement paths.
    pub fn h_rep(&self) -> u64 {
        self.per_edge_hops.iter().flatten().copied().max().unwrap_or(0)
    }
}

pub(crate) fn route_dims(g: &Graph) -> WordDims {
    // Token words carry hop counters up to a small multiple of n.
    WordDims::new(g.n(), g.w_max().max(4))
}

/// Weighted all-pairs table on the graph minus `forbidden`, in routing
/// orientation (each node knows its next hop toward every target).
fn apsp_minus_reversed(
    g: &Graph,
    forbidden: &[(usize, usize)],
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<ApspTable, AlgoError> {
    let base = VirtualTopology::identity(g);
    let arcs = base
        .arcs
        .iter()
        .copied()
        .filter(|&(a, b, _)| {
            !forbidden
                .iter()
                .any(|&(x, y)| (x == a && y == b) || (!g.directed() && x == b && y == a))
        })
        .collect();
    let topo = VirtualTopology {
        arcs,
        ..base
    }
    .reversed();
    Ok(apsp_virtual(g, Arc::new(topo), cfg, log, "apsp-routing-pass")?)
}

/// Walks a table path from `s` for edge `j`, returning its hop count.
fn walk_hops(
    g: &Graph,
    p: &PathSpec,
    next: &[Vec<Option<usize>>],
    j: usize,
) -> Result<Option<u64>, AlgoError> {
    if next[p.s][j].is_none() {
        return Ok(None);
    }
    let mut cur = p.s;
    let mut hops = 0u64;
    while cur != p.t {
        let nxt = next[cur][j].ok_or(AlgoError::PointerCycle(cur))?;
        if g.edge_weight(cur, nxt).is_none() {
            return Err(AlgoError::PointerCycle(cur));
        }
        cur = nxt;
        hops += 1;
        if hops > 2 * g.n() as u64 {
            return Err(AlgoError::PointerCycle(cur));
        }
    }
    Ok(Some(hops))
}

/// Pipelined claim walk-up for the undirected family: each per-edge winner
/// `u_j` climbs the s-tree, leaving child pointers behind.
struct ClaimProgram {
    winners: Arc<Vec<Option<(usize, usize)>>>,
    s_parent: Arc<Vec<Option<usize>>>,
    s: usize,
}

#[derive(Debug, Default)]
struct ClaimState {
    next: Vec<Option<usize>>,
    queue: VecDeque<u64>,
}

impl NodeProgram for ClaimProgram {
    type State = ClaimState;
    type Output = Vec<Option<usize>>;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> ClaimState {
        let mut st = ClaimState {
            next: vec![None; self.winners.len()],
            queue: VecDeque::new(),
        };
        for (j, w) in self.winners.iter().enumerate() {
            if let Some((u, _)) = w {
                if *u == view.node && *u != self.s {
                    st.queue.push_back(j as u64);
                }
            }
        }
        if !st.queue.is_empty() {
            ctx.wake_at(1);
        }
        st
    }

    fn round(&self, state: &mut ClaimState, ctx: &mut RoundCtx) -> bool {
        let me = ctx.view.node;
        for (from, word) in ctx.inbox() {
            let j = word[0] as usize;
            state.next[j] = Some(*from);
            if me != self.s {
                state.queue.push_back(j as u64);
            }
        }
        if let Some(j) = state.queue.pop_front() {
            let parent = self.s_parent[me].expect("claimers have an s-parent");
            ctx.send(parent, Word::new(&[j]));
        }
        if state.queue.is_empty() {
            true
        } else {
            ctx.wake_at(ctx.round() + 1);
            false
        }
    }

    fn finish(&self, _view: &LocalView, state: ClaimState) -> Vec<Option<usize>> {
        state.next
    }
}

/// Runs the chosen algorithm and derives per-edge routing tables, measuring
/// the extra construction rounds in the same log.
pub fn build_rpath_tables(
    g: &Graph,
    p: &PathSpec,
    algo: RpAlgo,
    cfg: &SimConfig,
) -> Result<(RPathsOutcome, RouteSet, PhaseLog), AlgoError> {
    let n = g.n();
    let h_st = p.h_st;
    match algo {
        RpAlgo::IterSssp => {
            let run = rpaths_iterated_sssp(g, p, cfg)?;
            let mut log = run.log;
            let RoutingSeed::NextToT(per_edge) = &run.result.routing else {
                return Err(AlgoError::MissingWitness("iterated-SSSP seed".into()));
            };
            let mut next = vec![vec![None; h_st]; n];
            for (j, phase) in per_edge.iter().enumerate() {
                if run.result.result.is_missing(j) {
                    continue;
                }
                for v in 0..n {
                    next[v][j] = phase[v];
                }
            }
            let per_edge_hops = (0..h_st)
                .map(|j| walk_hops(g, p, &next, j))
                .collect::<Result<Vec<_>, _>>()?;
            log.push("tables-from-trees", Subroutine::Other, zero_report(cfg, g));
            Ok((
                run.result,
                RouteSet {
                    next: Arc::new(next),
                    per_edge_hops,
                    undir_witnesses: None,
                    s_parent: None,
                    t_parent: None,
                },
                log,
            ))
        }
        RpAlgo::DirwApsp => {
            let run = rpaths_dirw_apsp(g, p, cfg)?;
            let mut log = run.log;
            let table = apsp_minus_reversed(g, &p.edge_set(), &cfg.with_salt(98), &mut log)?;
            let mut next = vec![vec![None; h_st]; n];
            for j in 0..h_st {
                let Some(RpWitness::Detour { v_a, v_b }) = run.result.result.per_edge[j].witness
                else {
                    continue;
                };
                let a = p.position(v_a).expect("deviation on path");
                let b = p.position(v_b).expect("rejoin on path");
                for v in 0..n {
                    next[v][j] = match p.position(v) {
                        Some(pos) if pos < a => Some(p.vertices[pos + 1]),
                        Some(pos) if pos >= b && pos < h_st => Some(p.vertices[pos + 1]),
                        _ if v == p.t => None,
                        _ => table.parent_toward(v_b, v),
                    };
                }
                // The deviation vertex enters the detour even if on the path.
                if v_a != v_b {
                    next[v_a][j] = table.parent_toward(v_b, v_a);
                }
            }
            let per_edge_hops = (0..h_st)
                .map(|j| walk_hops(g, p, &next, j))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((
                run.result,
                RouteSet {
                    next: Arc::new(next),
                    per_edge_hops,
                    undir_witnesses: None,
                    s_parent: None,
                    t_parent: None,
                },
                log,
            ))
        }
        RpAlgo::DirunwSample => {
            let run = rpaths_dirunw_sampling(g, p, &SamplingOptions::default(), cfg)?;
            let mut log = run.log;
            let RoutingSeed::SampledSources { sources, h } = &run.result.routing else {
                return Err(AlgoError::MissingWitness("sampling seed".into()));
            };
            // Next hops toward every source: reversed hop-limited BFS.
            let toward = hop_limited_bfs(
                g,
                sources.clone(),
                *h,
                p.edge_set(),
                true,
                &cfg.with_salt(99),
                &mut log,
            )?;
            let next_toward = |target: usize, at: usize| -> Option<usize> {
                toward[at]
                    .entries
                    .iter()
                    .find(|e| e.source == target)
                    .map(|e| e.parent)
            };
            let mut next = vec![vec![None; h_st]; n];
            for j in 0..h_st {
                let Some(RpWitness::Overlay {
                    v_a,
                    v_b,
                    ref waypoints,
                }) = run.result.result.per_edge[j].witness
                else {
                    continue;
                };
                let a = p.position(v_a).expect("deviation on path");
                let b = p.position(v_b).expect("rejoin on path");
                // Prefix and suffix ride the input path.
                for pos in 0..a {
                    next[p.vertices[pos]][j] = Some(p.vertices[pos + 1]);
                }
                for pos in b..h_st {
                    next[p.vertices[pos]][j] = Some(p.vertices[pos + 1]);
                }
                // Detour: walk the stitched legs, assigning successors.
                let mut stops = vec![v_a];
                stops.extend(waypoints.iter().copied());
                stops.push(v_b);
                let mut cur = v_a;
                for leg in stops.windows(2) {
                    let target = leg[1];
                    let mut guard = 0;
                    while cur != target {
                        let nxt = next_toward(target, cur)
                            .ok_or(AlgoError::PointerCycle(cur))?;
                        next[cur][j] = Some(nxt);
                        cur = nxt;
                        guard += 1;
                        if guard > n {
                            return Err(AlgoError::PointerCycle(cur));
                        }
                    }
                }
            }
            let per_edge_hops = (0..h_st)
                .map(|j| walk_hops(g, p, &next, j))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((
                run.result,
                RouteSet {
                    next: Arc::new(next),
                    per_edge_hops,
                    undir_witnesses: None,
                    s_parent: None,
                    t_parent: None,
                },
                log,
            ))
        }
        RpAlgo::Undirected => {
            let run = rpaths_undirected(g, p, cfg)?;
            let mut log = run.log;
            let RoutingSeed::UndirTrees { s_parent, t_parent } = &run.result.routing else {
                return Err(AlgoError::MissingWitness("undirected trees".into()));
            };
            let s_parent = Arc::new(s_parent.clone());
            let t_parent = Arc::new(t_parent.clone());
            let winners: Vec<Option<(usize, usize)>> = run
                .result
                .result
                .per_edge
                .iter()
                .map(|e| match e.witness {
                    Some(RpWitness::UndirType1 { u }) => Some((u, n)),
                    Some(RpWitness::UndirType2 { u, v }) => Some((u, v)),
                    _ => None,
                })
                .collect();
            let claim = ClaimProgram {
                winners: Arc::new(winners.clone()),
                s_parent: s_parent.clone(),
                s: p.s,
            };
            let claimed = crate::primitives::run_phase(
                g,
                &claim,
                &cfg.with_salt(95),
                crate::primitives::dims_for(g),
                &mut log,
                "claim-walk-up",
                Subroutine::Other,
            )?;
            let mut next = vec![vec![None; h_st]; n];
            for j in 0..h_st {
                let Some((u, partner)) = winners[j] else {
                    continue;
                };
                for v in 0..n {
                    next[v][j] = if v == u {
                        if partner < n {
                            Some(partner)
                        } else {
                            t_parent[v]
                        }
                    } else if let Some(c) = claimed[v][j] {
                        Some(c)
                    } else {
                        t_parent[v]
                    };
                }
                next[p.t][j] = None;
            }
            let per_edge_hops = (0..h_st)
                .map(|j| walk_hops(g, p, &next, j))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((
                run.result,
                RouteSet {
                    next: Arc::new(next),
                    per_edge_hops,
                    undir_witnesses: Some(winners),
                    s_parent: Some(s_parent),
                    t_parent: Some(t_parent),
                },
                log,
            ))
        }
    }
}

fn zero_report(cfg: &SimConfig, g: &Graph) -> crate::sim::SimReport {
    crate::sim::SimReport::new(cfg, crate::primitives::dims_for(g))
}

// Re-exported for the undirected on-the-fly path, which runs the weights
// algorithm itself.
pub fn undirected_onfly_inputs(
    g: &Graph,
    p: &PathSpec,
    cfg: &SimConfig,
) -> Result<
    (
        RPathsOutcome,
        Vec<Option<(usize, usize)>>,
        Arc<Vec<Option<usize>>>,
        Arc<Vec<Option<usize>>>,
        PhaseLog,
    ),
    AlgoError,
> {
    let run = rpaths_undirected(g, p, cfg)?;
    let RoutingSeed::UndirTrees { s_parent, t_parent } = &run.result.routing else {
        return Err(AlgoError::MissingWitness("undirected trees".into()));
    };
    let witnesses = run
        .result
        .result
        .per_edge
        .iter()
        .map(|e| match e.witness {
            Some(RpWitness::UndirType1 { u }) => Some((u, g.n())),
            Some(RpWitness::UndirType2 { u, v }) => Some((u, v)),
            _ => None,
        })
        .collect();
    let sp = Arc::new(s_parent.clone());
    let tp = Arc::new(t_parent.clone());
    let log = run.log.clone();
    Ok((run.result, witnesses, sp, tp, log))
}
