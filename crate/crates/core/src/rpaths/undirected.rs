//! Undirected replacement paths from two shortest-path trees.
//!
//! Every replacement path is either `P_s(s,u) . P_t(u,t)` for some vertex
//! `u` (type 1) or `P_s(s,u) . (u,v) . P_t(v,t)` for some edge `(u,v)`
//! (type 2). Two tree computations (from `s` and from `t`; plain BFS when
//! unweighted) give each vertex its `delta_su`, `delta_ut`, and the
//! positions `alpha(u)` / `beta(u)` where its tree paths last/first touch
//! the input path; one extra round in which every vertex hands `(delta_vt,
//! beta(v))` to its neighbors covers type 2. A type-1 candidate at `u` is a
//! valid replacement for path edges with index in `[alpha(u), beta(u))`,
//! a type-2 candidate over `(u, v)` for indexes in `[alpha(u), beta(v))`.
//! Per-edge minima ride a pipelined tree aggregation.
//!
//! Positions only order correctly when the input path's prefix weights are
//! strictly increasing, so paths with zero-weight edges are rejected.

use super::{
    AlgoError, AlgoRun, EdgeReplacement, RPathsOutcome, RPathsResult, RoutingSeed, RpWitness,
};
use crate::graph::{Graph, PathSpec, Weight};
use crate::primitives::{
    bfs_tree, broadcast_aggregate, sssp_with_meta, AggItem, AggMode, Tree,
};
use crate::sim::{
    InitCtx, LocalView, NodeProgram, PhaseLog, RoundCtx, SimConfig, Subroutine, Word,
};
use std::sync::Arc;

/// One-round exchange: every node hands `(dist_t, beta)` to all neighbors.
struct ExchangeProgram {
    dist_t: Arc<Vec<Weight>>,
    beta: Arc<Vec<u64>>,
}

impl NodeProgram for ExchangeProgram {
    type State = Vec<(usize, Weight, u64)>;
    type Output = Vec<(usize, Weight, u64)>;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> Self::State {
        let me = view.node;
        let word = Word::new(&[self.dist_t[me], self.beta[me]]);
        for inc in &view.incidences {
            ctx.send(inc.to, word.clone());
        }
        Vec::new()
    }

    fn round(&self, state: &mut Self::State, ctx: &mut RoundCtx) -> bool {
        for (from, word) in ctx.inbox() {
            state.push((*from, word[0], word[1]));
        }
        true
    }

    fn finish(&self, _view: &LocalView, state: Self::State) -> Self::Output {
        state
    }
}

/// Exact undirected replacement paths (weighted or unweighted) in
/// `O(SSSP + h_st + D)` rounds.
pub fn rpaths_undirected(
    g: &Graph,
    p: &PathSpec,
    cfg: &SimConfig,
) -> Result<AlgoRun<RPathsOutcome>, AlgoError> {
    assert!(!g.directed(), "undirected algorithm");
    super::validate_input(g, p)?;
    for j in 0..p.h_st {
        let (u, v) = p.edge(j);
        if g.edge_weight(u, v) == Some(0) {
            return Err(AlgoError::InvalidInput(
                "input path has a zero-weight edge; alpha/beta positions need strictly \
                 increasing prefixes"
                    .into(),
            ));
        }
    }
    let mut log = PhaseLog::new();
    let n = g.n();
    let sent = g.sentinel();
    let path = Arc::new(p.clone());

    // Trees from s and t with alpha/beta tracking.
    let from_s = sssp_with_meta(g, p.s, path.clone(), false, &cfg.with_salt(31), &mut log)?;
    let from_t = sssp_with_meta(g, p.t, path.clone(), false, &cfg.with_salt(32), &mut log)?;

    let dist_t: Arc<Vec<Weight>> = Arc::new(from_t.iter().map(|o| o.dist).collect());
    let beta: Arc<Vec<u64>> = Arc::new(from_t.iter().map(|o| o.alpha_pos).collect());
    let exchange = ExchangeProgram {
        dist_t: dist_t.clone(),
        beta: beta.clone(),
    };
    let heard = crate::primitives::run_phase(
        g,
        &exchange,
        &cfg.with_salt(33),
        crate::primitives::dims_for(g),
        &mut log,
        "neighbor-exchange",
        Subroutine::Other,
    )?;

    // Local candidates.
    let path_edge = |u: usize, v: usize| {
        p.edge_index(u, v).is_some() || p.edge_index(v, u).is_some()
    };
    let mut items: Vec<Vec<AggItem>> = vec![Vec::new(); n];
    for u in 0..n {
        let du_s = from_s[u].dist;
        let du_t = from_t[u].dist;
        if du_s >= sent {
            continue;
        }
        let alpha_u = from_s[u].alpha_pos;
        // Type 1: P_s(s,u) . P_t(u,t) covers [alpha(u), beta(u)).
        if du_t < sent {
            let w1 = (du_s + du_t).min(sent);
            for j in alpha_u..beta[u].min(p.h_st as u64) {
                items[u].push(AggItem::new(j, w1, [u as u64, n as u64]));
            }
        }
        // Type 2: P_s(s,u) . (u,v) . P_t(v,t) covers [alpha(u), beta(v)).
        for &(v, dvt, beta_v) in &heard[u] {
            if path_edge(u, v) || dvt >= sent {
                continue;
            }
            let w_uv = g.edge_weight(u, v).expect("neighbor edge");
            let w2 = (du_s + w_uv + dvt).min(sent);
            for j in alpha_u..beta_v.min(p.h_st as u64) {
                items[u].push(AggItem::new(j, w2, [u as u64, v as u64]));
            }
        }
    }

    // Per-edge minima up and down the s-rooted tree.
    let bfs = bfs_tree(g, p.s, true, &cfg.with_salt(34), &mut log)?;
    let tree = Arc::new(Tree::from_bfs(p.s, &bfs));
    let agg = broadcast_aggregate(
        g,
        tree,
        AggMode::MinPerKey {
            key_count: p.h_st as u64,
        },
        items,
        true,
        &cfg.with_salt(35),
        &mut log,
    )?;

    let per_edge: Vec<EdgeReplacement> = agg[0]
        .items
        .iter()
        .map(|item| {
            if item.value >= sent {
                return EdgeReplacement {
                    weight: sent,
                    witness: None,
                    hops: None,
                };
            }
            let u = item.aux[0] as usize;
            let v = item.aux[1] as usize;
            let (witness, hops) = if v == n {
                (
                    RpWitness::UndirType1 { u },
                    from_s[u].hops + from_t[u].hops,
                )
            } else {
                (
                    RpWitness::UndirType2 { u, v },
                    from_s[u].hops + 1 + from_t[v].hops,
                )
            };
            EdgeReplacement {
                weight: item.value,
                witness: Some(witness),
                hops: Some(hops),
            }
        })
        .collect();

    Ok(AlgoRun {
        result: RPathsOutcome {
            result: RPathsResult {
                per_edge,
                scale: 1,
                sentinel: sent,
            },
            routing: RoutingSeed::UndirTrees {
                s_parent: from_s.iter().map(|o| o.parent).collect(),
                t_parent: from_t.iter().map(|o| o.parent).collect(),
            },
        },
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{gen_gadget, GadgetFamily, GadgetSpec};
    use crate::graph::random_graph;
    use crate::oracle;

    #[test]
    fn c4_each_replacement_is_the_three_edge_complement() {
        let g = Graph::new(4, false, false, vec![(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
            .unwrap();
        let p = PathSpec::new(&g, vec![0, 1]).unwrap();
        let run = rpaths_undirected(&g, &p, &SimConfig::new(0)).unwrap();
        assert_eq!(run.result.result.per_edge[0].weight, 3);
        assert_eq!(run.result.result.per_edge[0].hops, Some(3));
    }

    #[test]
    fn random_weighted_instances_match_oracle_per_edge() {
        let mut done = 0;
        for seed in 0..40 {
            let Ok(g) = random_graph(26, 0.16, true, false, 40, seed) else {
                continue;
            };
            let Ok(p) = PathSpec::from_endpoints(&g, 0, 19) else {
                continue;
            };
            if p.h_st < 2 {
                continue;
            }
            let run = rpaths_undirected(&g, &p, &SimConfig::new(seed)).unwrap();
            let want = oracle::oracle_rpaths(&g, &p);
            let got: Vec<Weight> =
                run.result.result.per_edge.iter().map(|e| e.weight).collect();
            assert_eq!(got, want, "seed {seed}");
            done += 1;
        }
        assert!(done >= 15, "only {done} instances");
    }

    #[test]
    fn random_unweighted_instances_match_oracle_per_edge() {
        let mut done = 0;
        for seed in 0..30 {
            let Ok(g) = random_graph(30, 0.12, false, false, 1, seed) else {
                continue;
            };
            let Ok(p) = PathSpec::from_endpoints(&g, 2, 27) else {
                continue;
            };
            if p.h_st < 3 {
                continue;
            }
            let run = rpaths_undirected(&g, &p, &SimConfig::new(seed)).unwrap();
            let want = oracle::oracle_rpaths(&g, &p);
            let got: Vec<Weight> =
                run.result.result.per_edge.iter().map(|e| e.weight).collect();
            assert_eq!(got, want, "seed {seed}");
            done += 1;
        }
        assert!(done >= 10, "only {done} instances");
    }

    #[test]
    fn fig_gadget_sisp2_is_two_plus_base_distance() {
        for seed in 0..10 {
            let spec = GadgetSpec::random(GadgetFamily::UndirRpaths, 12, true, seed);
            let inst = gen_gadget(&spec).unwrap();
            let p = inst.path.unwrap();
            let run = rpaths_undirected(&inst.graph, &p, &SimConfig::new(seed)).unwrap();
            assert_eq!(
                run.result.result.sisp2(),
                2 + inst.base_distance.unwrap(),
                "seed {seed}"
            );
        }
    }
}
