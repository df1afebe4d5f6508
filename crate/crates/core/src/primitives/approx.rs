//! `(1+eps)`-approximate hop-limited multi-source distances via weight
//! scaling.
//!
//! For level `i = 1, 2, ...` every weight is replaced by
//! `w_i = ceil(2 C w / (eps 2^i))` where `C = (1 + 2/eps) h`, and a delayed
//! BFS capped at `C` explores the scaled graph. Rescaling a level-`i`
//! distance by `eps 2^i / (2 C)` never underestimates the true distance,
//! and for every pair joined by a path of at most `h` hops some level's
//! rescaled value is within `(1+eps)`. Each node keeps, per source, the
//! level with the smallest rescaled value; estimates are exact rationals
//! `d_i * eps_num * 2^i / (2 C eps_den)`, so consumers can compare and add
//! them without rounding error.

use crate::graph::{scale_weights, Graph};
use crate::sim::{PhaseLog, SimConfig, SimError};
use std::collections::BTreeMap;
use std::sync::Arc;

use super::multi_bfs::{CandidateRules, MultiSourceBfs};
use super::run_phase;

/// Result of one approximate multi-source computation.
#[derive(Debug, Clone)]
pub struct ApproxEstimates {
    /// Per node, per source: the argmin level and its scaled distance.
    pub per_node: Vec<BTreeMap<usize, (u32, u64)>>,
    /// Common denominator: estimates are `num / q_den` with
    /// `num = d_i * eps_num << i`.
    pub q_den: u128,
    pub eps_num: u64,
    pub eps_den: u64,
    pub cap: u64,
    pub levels: u32,
}

impl ApproxEstimates {
    /// Estimate numerator over `q_den` for (source, node), if any level
    /// reached it.
    pub fn numerator(&self, source: usize, node: usize) -> Option<u128> {
        self.per_node[node]
            .get(&source)
            .map(|&(i, d)| ((d as u128) * (self.eps_num as u128)) << i)
    }
}

/// Number of scaling levels: `ceil(log_{1+eps}(cap * W))`.
pub fn level_count(cap: u64, w_max: u64, eps_num: u64, eps_den: u64) -> u32 {
    let target = (cap as f64) * (w_max as f64);
    let base = 1.0 + eps_num as f64 / eps_den as f64;
    let levels = (target.ln() / base.ln()).ceil().max(1.0) as u32;
    assert!(levels < 100, "scaling level count diverged");
    levels
}

/// Hop cap `C = ceil(h * (eps + 2) / eps)`.
pub fn scaled_cap(h: u64, eps_num: u64, eps_den: u64) -> u64 {
    let num = (h as u128) * ((eps_num + 2 * eps_den) as u128);
    num.div_ceil(eps_num as u128) as u64
}

/// Runs the level loop. Distances are sound for every pair and
/// `(1+eps)`-tight for pairs joined by an `<= h`-hop path that avoids
/// `forbidden`.
pub fn approx_msssp(
    g: &Graph,
    sources: Vec<usize>,
    h: u64,
    eps_num: u64,
    eps_den: u64,
    forbidden: Vec<(usize, usize)>,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<ApproxEstimates, SimError> {
    assert!(g.weighted() && eps_num > 0 && eps_den > 0);
    let cap = scaled_cap(h.max(1), eps_num, eps_den);
    let levels = level_count(cap, g.w_max(), eps_num, eps_den);
    let mut sources = sources;
    sources.sort_unstable();
    sources.dedup();
    let forbidden = Arc::new(forbidden);

    let mut acc: Vec<BTreeMap<usize, (u32, u64)>> = vec![BTreeMap::new(); g.n()];
    for i in 1..=levels {
        let scaled =
            scale_weights(g, i, eps_num, eps_den, cap).expect("scaled weights stay in range");
        let prog = MultiSourceBfs {
            sources: Arc::new(sources.clone()),
            hop_limit: cap,
            top_r: g.n(),
            respect_direction: g.directed(),
            reversed: false,
            forbidden: forbidden.clone(),
            undirected: !g.directed(),
            delayed: true,
            track_first: false,
            candidates: CandidateRules::None,
        };
        let out = run_phase(
            &scaled,
            &prog,
            &cfg.with_salt(1000 + i as u64).with_virtual_time(true),
            super::dims_for(&scaled),
            log,
            &format!("approx-msssp-level-{i}"),
            crate::sim::Subroutine::Other,
        )?;
        for (v, o) in out.iter().enumerate() {
            for e in &o.entries {
                let num = (e.dist as u128) << i;
                let better = match acc[v].get(&e.source) {
                    Some(&(bi, bd)) => num < (bd as u128) << bi,
                    None => true,
                };
                if better {
                    acc[v].insert(e.source, (i, e.dist));
                }
            }
        }
    }

    Ok(ApproxEstimates {
        per_node: acc,
        q_den: 2 * (cap as u128) * (eps_den as u128),
        eps_num,
        eps_den,
        cap,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;
    use crate::oracle::{dijkstra, Forbidden};
    use crate::sim::PhaseLog;

    /// h-hop-limited exact distance by Bellman-Ford over hop counts.
    fn hop_limited_dist(g: &Graph, s: usize, h: u64) -> Vec<Option<u64>> {
        let mut d = vec![None; g.n()];
        d[s] = Some(0u64);
        for _ in 0..h {
            let prev = d.clone();
            for u in 0..g.n() {
                if let Some(du) = prev[u] {
                    for &(v, w) in g.out_edges(u) {
                        if d[v].map_or(true, |dv| du + w < dv) {
                            d[v] = Some(du + w);
                        }
                    }
                }
            }
        }
        d
    }

    #[test]
    fn unit_weights_with_power_of_two_setup_are_exact() {
        let g = random_graph(24, 0.2, true, false, 1, 3).unwrap();
        // All weights 1; h = 16, eps = 1/4 makes 2C/eps = 1152 divisible at
        // level 7, so scaling degenerates to the exact hop distance.
        let mut log = PhaseLog::new();
        let est = approx_msssp(&g, vec![0], 16, 1, 4, vec![], &SimConfig::new(3), &mut log)
            .unwrap();
        let (want, _) = dijkstra(&g, 0, &Forbidden::none());
        for v in 0..g.n() {
            if want[v] <= 16 {
                let num = est.numerator(0, v).unwrap();
                assert_eq!(num, want[v] as u128 * est.q_den, "node {v}");
            }
        }
    }

    #[test]
    fn estimates_never_underestimate_and_stay_within_eps() {
        for seed in 0..8 {
            let g = random_graph(22, 0.25, true, false, 25, seed).unwrap();
            let h = 6u64;
            let mut log = PhaseLog::new();
            let est = approx_msssp(
                &g,
                vec![1, 5],
                h,
                1,
                4,
                vec![],
                &SimConfig::new(seed),
                &mut log,
            )
            .unwrap();
            for &s in &[1usize, 5] {
                let capped = hop_limited_dist(&g, s, h);
                let (true_dist, _) = dijkstra(&g, s, &Forbidden::none());
                for v in 0..g.n() {
                    let Some(num) = est.numerator(s, v) else {
                        continue;
                    };
                    // Sound: never below the true unrestricted distance.
                    assert!(
                        num >= (true_dist[v] as u128) * est.q_den,
                        "seed {seed} source {s} node {v} underestimates"
                    );
                    // Tight: within (1+eps) of the h-hop-limited distance.
                    if let Some(dh) = capped[v] {
                        let bound = (dh as u128) * est.q_den * (4 + 1) / 4;
                        assert!(
                            num <= bound,
                            "seed {seed} source {s} node {v}: {num} > {bound}"
                        );
                    }
                }
            }
        }
    }
}
