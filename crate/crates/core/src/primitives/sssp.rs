//! Distributed Bellman-Ford single-source shortest paths.
//!
//! Exact for non-negative integer weights; forbidden edges are never
//! relaxed (the distributed analogue of setting their weight to infinity).
//! Reversed mode relaxes against edge orientation, computing distances *to*
//! the source; the adopted predecessor then doubles as the next hop toward
//! it. Optional metadata tracks hop counts and the position of the last
//! input-path vertex on the adopted tree path (the alpha/beta values used by
//! the undirected replacement-path algorithm).

use crate::graph::{Graph, PathSpec, Weight};
use crate::sim::{
    InitCtx, LocalView, NodeProgram, PhaseLog, RoundCtx, SimConfig, SimError, Subroutine, Word,
};
use std::sync::Arc;

use super::{dims_for, run_phase};

#[derive(Debug, Clone)]
pub struct SsspProgram {
    pub source: usize,
    /// Directed pairs; an undirected edge is blocked in both orientations.
    pub forbidden: Arc<Vec<(usize, usize)>>,
    /// Whether the graph is undirected (affects forbidden-edge symmetry).
    pub undirected: bool,
    /// Relax in-edges instead of out-edges (distances toward `source`).
    pub reversed: bool,
    /// Track (hops, alpha) metadata relative to this path.
    pub path_meta: Option<Arc<PathSpec>>,
}

impl SsspProgram {
    fn blocked(&self, from: usize, to: usize) -> bool {
        self.forbidden
            .iter()
            .any(|&(a, b)| (a == from && b == to) || (self.undirected && a == to && b == from))
    }
}

#[derive(Debug, Clone)]
pub struct SsspState {
    dist: Weight,
    parent: Option<usize>,
    hops: u64,
    alpha_pos: u64,
    dirty: bool,
}

/// Per-node result of one SSSP run.
#[derive(Debug, Clone)]
pub struct SsspOutput {
    pub dist: Weight,
    /// Predecessor in normal mode; next hop toward the source in reversed
    /// mode. None at the source and at unreached nodes.
    pub parent: Option<usize>,
    pub hops: u64,
    /// Position on the metadata path of the last path vertex on the adopted
    /// tree path (`n` when metadata is off).
    pub alpha_pos: u64,
}

impl NodeProgram for SsspProgram {
    type State = SsspState;
    type Output = SsspOutput;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> SsspState {
        let is_src = view.node == self.source;
        if is_src {
            ctx.wake_at(1);
        }
        let alpha = match (&self.path_meta, is_src) {
            (Some(p), true) => p.position(self.source).map_or(view.n as u64, |i| i as u64),
            _ => view.n as u64,
        };
        SsspState {
            dist: if is_src { 0 } else { view.sentinel },
            parent: None,
            hops: 0,
            alpha_pos: alpha,
            dirty: is_src,
        }
    }

    fn round(&self, state: &mut SsspState, ctx: &mut RoundCtx) -> bool {
        for (from, word) in ctx.inbox() {
            let inc = ctx
                .view
                .incidences
                .iter()
                .find(|i| i.to == *from)
                .expect("sender is a neighbor");
            // Normal mode relaxes the edge (from -> me); reversed mode the
            // edge (me -> from).
            let w = if self.reversed {
                inc.out_weight
            } else {
                inc.in_weight
            }
            .expect("relaxation arrives along an oriented edge");
            let nd = word[0] + w;
            let better = nd < state.dist
                || (nd == state.dist && state.parent.map_or(false, |p| *from < p));
            if better {
                state.dist = nd;
                state.parent = Some(*from);
                state.hops = word.fields().get(1).copied().unwrap_or(0) + 1;
                state.alpha_pos = match &self.path_meta {
                    Some(p) => p
                        .position(ctx.view.node)
                        .map_or(word.fields().get(2).copied().unwrap_or(ctx.view.n as u64), |i| {
                            i as u64
                        }),
                    None => ctx.view.n as u64,
                };
                state.dirty = true;
            }
        }

        if state.dirty {
            state.dirty = false;
            let me = ctx.view.node;
            let payload = if self.path_meta.is_some() {
                Word::new(&[state.dist, state.hops, state.alpha_pos])
            } else {
                Word::new(&[state.dist])
            };
            let sends: Vec<usize> = ctx
                .view
                .incidences
                .iter()
                .filter(|i| {
                    let along = if self.reversed {
                        i.incoming()
                    } else {
                        i.outgoing()
                    };
                    let (a, b) = if self.reversed { (i.to, me) } else { (me, i.to) };
                    along && Some(i.to) != state.parent && !self.blocked(a, b)
                })
                .map(|i| i.to)
                .collect();
            for to in sends {
                ctx.send(to, payload.clone());
            }
        }
        true
    }

    fn finish(&self, _view: &LocalView, state: SsspState) -> SsspOutput {
        SsspOutput {
            dist: state.dist,
            parent: state.parent,
            hops: state.hops,
            alpha_pos: state.alpha_pos,
        }
    }
}

/// Plain SSSP phase from `source`, optionally skipping forbidden edges and
/// reversing orientation.
pub fn sssp(
    g: &Graph,
    source: usize,
    forbidden: Vec<(usize, usize)>,
    reversed: bool,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<Vec<SsspOutput>, SimError> {
    run_phase(
        g,
        &SsspProgram {
            source,
            forbidden: Arc::new(forbidden),
            undirected: !g.directed(),
            reversed,
            path_meta: None,
        },
        cfg,
        dims_for(g),
        log,
        &format!("sssp(source={source}, reversed={reversed})"),
        Subroutine::Sssp,
    )
}

/// SSSP with hop counts and alpha tracking for the given input path.
pub fn sssp_with_meta(
    g: &Graph,
    source: usize,
    path: Arc<PathSpec>,
    reversed: bool,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<Vec<SsspOutput>, SimError> {
    run_phase(
        g,
        &SsspProgram {
            source,
            forbidden: Arc::new(Vec::new()),
            undirected: !g.directed(),
            reversed,
            path_meta: Some(path),
        },
        cfg,
        dims_for(g),
        log,
        &format!("sssp+meta(source={source}, reversed={reversed})"),
        Subroutine::Sssp,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;
    use crate::oracle::{dijkstra, dijkstra_to, Forbidden};
    use crate::sim::PhaseLog;

    #[test]
    fn matches_dijkstra_on_random_weighted_graphs() {
        for seed in 0..10 {
            let g = random_graph(36, 0.15, true, true, 60, seed).unwrap();
            let mut log = PhaseLog::new();
            let out = sssp(&g, 0, vec![], false, &SimConfig::new(seed), &mut log).unwrap();
            let (want, _) = dijkstra(&g, 0, &Forbidden::none());
            let got: Vec<_> = out.iter().map(|o| o.dist).collect();
            assert_eq!(got, want, "seed {seed}");
        }
    }

    #[test]
    fn unweighted_sssp_equals_bfs_distances() {
        let g = random_graph(30, 0.15, false, false, 1, 4).unwrap();
        let mut log = PhaseLog::new();
        let out = sssp(&g, 5, vec![], false, &SimConfig::new(4), &mut log).unwrap();
        let (want, _) = dijkstra(&g, 5, &Forbidden::none());
        assert!(out.iter().zip(&want).all(|(o, &w)| o.dist == w));
    }

    #[test]
    fn forbidden_bridge_disconnects() {
        // 0 -1- 1 -1- 2; forbidding (1,2) makes 2 unreachable.
        let g = Graph::new(3, false, true, vec![(0, 1, 1), (1, 2, 1)]).unwrap();
        let mut log = PhaseLog::new();
        let out = sssp(&g, 0, vec![(1, 2)], false, &SimConfig::new(0), &mut log).unwrap();
        assert_eq!(out[2].dist, g.sentinel());
    }

    #[test]
    fn reversed_mode_gives_distances_to_target() {
        for seed in [2, 9] {
            let g = random_graph(28, 0.2, true, true, 40, seed).unwrap();
            let t = 11;
            let mut log = PhaseLog::new();
            let out = sssp(&g, t, vec![], true, &SimConfig::new(seed), &mut log).unwrap();
            let (want, _) = dijkstra_to(&g, t, &Forbidden::none());
            let got: Vec<_> = out.iter().map(|o| o.dist).collect();
            assert_eq!(got, want, "seed {seed}");
            // Parent of a reached node is its next hop toward t.
            for v in 0..g.n() {
                if v != t && out[v].dist < g.sentinel() {
                    let p = out[v].parent.unwrap();
                    assert_eq!(out[v].dist, g.edge_weight(v, p).unwrap() + out[p].dist);
                }
            }
        }
    }
}
