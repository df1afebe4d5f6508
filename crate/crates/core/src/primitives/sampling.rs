//! Independent per-node vertex sampling.

use crate::graph::Graph;
use crate::sim::{InitCtx, LocalView, NodeProgram, PhaseLog, RoundCtx, SimConfig, SimError};
use rand::Rng;
use std::sync::Arc;

use super::{broadcast_aggregate, AggItem, AggMode, Tree};

struct SampleProgram {
    prob: f64,
}

impl NodeProgram for SampleProgram {
    type State = bool;
    type Output = bool;

    fn init(&self, _view: &LocalView, ctx: &mut InitCtx) -> bool {
        ctx.rng.gen_bool(self.prob)
    }

    fn round(&self, _state: &mut bool, _ctx: &mut RoundCtx) -> bool {
        true
    }

    fn finish(&self, _view: &LocalView, state: bool) -> bool {
        state
    }
}

/// Each node joins `S` independently with probability `prob` using its own
/// seeded stream (zero rounds), then the membership list is announced over
/// the tree so `S` and `|S|` are common knowledge.
pub fn sample_vertices(
    g: &Graph,
    prob: f64,
    tree: Arc<Tree>,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<Vec<usize>, SimError> {
    assert!((0.0..=1.0).contains(&prob));
    let picks = super::run_phase(
        g,
        &SampleProgram { prob },
        cfg,
        super::dims_for(g),
        log,
        "sample-vertices",
        crate::sim::Subroutine::Other,
    )?;
    let items: Vec<Vec<AggItem>> = picks
        .iter()
        .enumerate()
        .map(|(v, &inside)| {
            if inside {
                vec![AggItem::new(v as u64, 0, [0, 0])]
            } else {
                vec![]
            }
        })
        .collect();
    let out = broadcast_aggregate(g, tree, AggMode::Concat, items, true, cfg, log)?;
    Ok(out[0].items.iter().map(|i| i.key as usize).collect())
}

/// The sampling probability `min(1, c * ln n / denom)` used throughout the
/// algorithms.
pub fn hitting_prob(c: f64, n: usize, denom: f64) -> f64 {
    ((c * (n.max(2) as f64).ln()) / denom).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;
    use crate::primitives::bfs_tree;
    use crate::sim::PhaseLog;

    fn setup(seed: u64) -> (Graph, Arc<Tree>, SimConfig) {
        let g = random_graph(30, 0.15, false, false, 1, seed).unwrap();
        let cfg = SimConfig::new(seed);
        let mut log = PhaseLog::new();
        let bfs = bfs_tree(&g, 0, false, &cfg, &mut log).unwrap();
        (g.clone(), Arc::new(Tree::from_bfs(0, &bfs)), cfg)
    }

    #[test]
    fn prob_one_is_everyone_prob_zero_is_no_one() {
        let (g, tree, cfg) = setup(2);
        let mut log = PhaseLog::new();
        let all = sample_vertices(&g, 1.0, tree.clone(), &cfg, &mut log).unwrap();
        assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        let none = sample_vertices(&g, 0.0, tree, &cfg, &mut log).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let (g, tree, cfg) = setup(7);
        let mut log = PhaseLog::new();
        let a = sample_vertices(&g, 0.4, tree.clone(), &cfg, &mut log).unwrap();
        let b = sample_vertices(&g, 0.4, tree, &cfg, &mut log).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn hitting_prob_covers_h_hop_paths_on_small_instances() {
        // c=2: every h-hop shortest path in the corpus intersects S.
        let h = 4u64;
        let mut trials = 0;
        for seed in 0..60 {
            let (g, tree, cfg) = setup(100 + seed);
            let prob = hitting_prob(2.0, g.n(), h as f64);
            let mut log = PhaseLog::new();
            let s = sample_vertices(&g, prob, tree, &cfg.with_salt(seed), &mut log).unwrap();
            let in_s = |v: usize| s.binary_search(&v).is_ok();
            // Check every shortest path of exactly h hops from node 0.
            let (dist, pred) = crate::oracle::dijkstra(&g, 0, &crate::oracle::Forbidden::none());
            for t in 0..g.n() {
                if dist[t] == h {
                    let mut v = t;
                    let mut hit = false;
                    while v != 0 {
                        hit |= in_s(v);
                        v = pred[v];
                    }
                    hit |= in_s(0);
                    assert!(hit, "seed {seed}: path to {t} missed S");
                    trials += 1;
                }
            }
        }
        assert!(trials > 50, "exercised {trials} paths");
    }
}
