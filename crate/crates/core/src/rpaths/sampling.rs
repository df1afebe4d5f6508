//! Replacement paths by hop-limited search plus sampled long-detour
//! stitching.
//!
//! Short detours (at most `h` hops) are found by a pipelined multi-source
//! BFS from every path vertex on the path-deleted graph. For long detours,
//! every vertex joins a sampled set `S` with probability `Theta(log n / h)`,
//! so with high probability every `h`-hop stretch of a detour contains a
//! sampled vertex; BFS from `S` plus a broadcast of all source-to-source
//! distances lets every path vertex stitch long detours from at-most-`h`-hop
//! legs (closing the legs over the sampled overlay, which covers detours of
//! any length). Exactness holds with high probability over `S`; the result
//! records the stitched waypoints as witnesses.
//!
//! The `(1+eps)` directed weighted variant swaps the BFS for scaled
//! approximate hop-limited distances and reports weights as exact rationals
//! over a fixed denominator.
//!
//! Parameter choice (`h_st` known at start): `p = n^(1/3)`, `h = n^(2/3)`
//! when `h_st < n^(1/3)`, else `h = sqrt(n h_st)`, `p = sqrt(n / h_st)`;
//! the sampling probability is `min(1, 2 ln n / h)`, the standard
//! hitting-set constant.

use super::{
    AlgoError, AlgoRun, EdgeReplacement, RPathsOutcome, RPathsResult, RoutingSeed, RpWitness,
};
use crate::graph::{Graph, PathSpec, Weight};
use crate::primitives::{
    approx_msssp, bfs_tree, broadcast_aggregate_retaining, broadcast_aggregate_with_dims,
    hop_limited_bfs, sample_vertices, scaled_cap, AggItem, AggMode, Tree,
};
use crate::sim::{PhaseLog, SimConfig};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Tuning knobs; defaults follow the parameter rule above.
#[derive(Debug, Clone, Default)]
pub struct SamplingOptions {
    /// Override the sampling probability (used to demonstrate the
    /// low-probability failure mode).
    pub sample_prob_override: Option<f64>,
}

/// `p` and `h` from the instance size.
pub fn sampling_parameters(n: usize, h_st: usize) -> (u64, u64) {
    let nf = n as f64;
    let cbrt = nf.cbrt();
    let (p, h) = if (h_st as f64) < cbrt {
        (cbrt, nf.powf(2.0 / 3.0))
    } else {
        ((nf / h_st as f64).sqrt(), (nf * h_st as f64).sqrt())
    };
    let clamp = |x: f64| (x.ceil() as u64).clamp(1, n as u64);
    (clamp(p), clamp(h))
}

/// Sampling probability `min(1, 2 ln n / h)`.
pub fn sampling_probability(n: usize, h: u64) -> f64 {
    let log = (n.max(2) as f64).ln();
    (2.0 * log / h as f64).min(1.0)
}

/// Distances between overlay terminals, as numerators over a common
/// denominator (`den = 1` for the exact variant).
struct OverlayData {
    ids: Vec<usize>,
    index: BTreeMap<usize, usize>,
    /// dist[a][b]: numerator of the a -> b leg estimate; u128::MAX = none.
    dist: Vec<Vec<u128>>,
    /// Positive exact hop counts for the exact variant (hops == value).
    den: u128,
}

const INF: u128 = u128::MAX;

impl OverlayData {
    /// All-pairs closure over the overlay with path recovery.
    fn closure(&self) -> (Vec<Vec<u128>>, Vec<Vec<usize>>) {
        let k = self.ids.len();
        let mut d = self.dist.clone();
        let mut via: Vec<Vec<usize>> = vec![vec![usize::MAX; k]; k];
        for m in 0..k {
            for a in 0..k {
                if d[a][m] == INF {
                    continue;
                }
                for b in 0..k {
                    if d[m][b] == INF {
                        continue;
                    }
                    let nd = d[a][m] + d[m][b];
                    if nd < d[a][b] {
                        d[a][b] = nd;
                        via[a][b] = m;
                    }
                }
            }
        }
        (d, via)
    }

    fn waypoints(&self, via: &[Vec<usize>], a: usize, b: usize, out: &mut Vec<usize>) {
        // Depth-guarded: zero-weight legs could make the via decomposition
        // degenerate, and a truncated waypoint list only weakens witnesses,
        // never weights.
        fn rec(o: &OverlayData, via: &[Vec<usize>], a: usize, b: usize, out: &mut Vec<usize>, depth: usize) {
            if depth > o.ids.len() {
                return;
            }
            let m = via[a][b];
            if m == usize::MAX {
                return;
            }
            rec(o, via, a, m, out, depth + 1);
            out.push(o.ids[m]);
            rec(o, via, m, b, out, depth + 1);
        }
        rec(self, via, a, b, out, 0);
    }
}

struct Assembled {
    per_edge: Vec<EdgeReplacement>,
    scale: Weight,
}

/// Shared tail of both variants: stitch legs, take per-edge minima.
fn assemble(
    g: &Graph,
    p: &PathSpec,
    overlay: &OverlayData,
    exact_hops: bool,
) -> Result<Assembled, AlgoError> {
    let sent = g.sentinel() as u128;
    let den = overlay.den;
    let prefix = p.prefix_weights(g);
    let suffix: Vec<Weight> = prefix.iter().map(|&w| p.delta_st - w).collect();
    let (closed, via) = overlay.closure();

    let pos_of = |v: usize| overlay.index[&v];
    let mut per_edge = Vec::with_capacity(p.h_st);
    for j in 0..p.h_st {
        let mut best: Option<(u128, usize, usize)> = None;
        for (ai, &v_a) in p.vertices.iter().enumerate().take(j + 1) {
            for (bi, &v_b) in p.vertices.iter().enumerate().skip(j + 1) {
                let (oa, ob) = (pos_of(v_a), pos_of(v_b));
                if closed[oa][ob] == INF {
                    continue;
                }
                let total = (prefix[ai] as u128) * den
                    + closed[oa][ob]
                    + (suffix[bi] as u128) * den;
                if best.map_or(true, |(bw, ba, bb)| (total, ai, bi) < (bw, ba, bb)) {
                    best = Some((total, ai, bi));
                }
            }
        }
        match best {
            // Any finite stitched value is a real walk; only a disconnected
            // overlay means no replacement.
            Some((w, ai, bi)) => {
                let (v_a, v_b) = (p.vertices[ai], p.vertices[bi]);
                let mut waypoints = Vec::new();
                overlay.waypoints(&via, pos_of(v_a), pos_of(v_b), &mut waypoints);
                let hops = exact_hops.then(|| {
                    // Unweighted: leg values are hop counts.
                    let detour = closed[pos_of(v_a)][pos_of(v_b)] as u64;
                    ai as u64 + detour + (p.h_st - bi) as u64
                });
                per_edge.push(EdgeReplacement {
                    weight: u64::try_from(w).map_err(|_| {
                        AlgoError::InvalidInput("scaled weight exceeds u64".into())
                    })?,
                    witness: Some(RpWitness::Overlay {
                        v_a,
                        v_b,
                        waypoints,
                    }),
                    hops,
                });
            }
            _ => per_edge.push(EdgeReplacement {
                weight: u64::try_from(sent * den)
                    .map_err(|_| AlgoError::InvalidInput("scaled sentinel exceeds u64".into()))?,
                witness: None,
                hops: None,
            }),
        }
    }
    Ok(Assembled {
        per_edge,
        scale: den as Weight,
    })
}

/// Common phases: tree, sampling, per-variant distances, column broadcast.
fn run_skeleton(
    g: &Graph,
    p: &PathSpec,
    opts: &SamplingOptions,
    eps: Option<(u64, u64)>,
    cfg: &SimConfig,
) -> Result<AlgoRun<RPathsOutcome>, AlgoError> {
    super::validate_input(g, p)?;
    let mut log = PhaseLog::new();
    let n = g.n();
    let (_p_budget, h) = sampling_parameters(n, p.h_st);
    let prob = opts
        .sample_prob_override
        .unwrap_or_else(|| sampling_probability(n, h));

    let bfs = bfs_tree(g, p.s, true, &cfg.with_salt(20), &mut log)?;
    let tree = Arc::new(Tree::from_bfs(p.s, &bfs));
    let tree_for_minima = tree.clone();
    let sampled = sample_vertices(g, prob, tree.clone(), &cfg.with_salt(21), &mut log)?;

    let mut sources: Vec<usize> = p.vertices.clone();
    sources.extend(&sampled);
    sources.sort_unstable();
    sources.dedup();
    let forbidden = p.edge_set();

    // Per-variant hop-limited distances, then a broadcast of every
    // source-to-source column so path vertices can stitch detours.
    let mut items: Vec<Vec<AggItem>> = vec![Vec::new(); n];
    let is_source: Vec<bool> = {
        let mut v = vec![false; n];
        for &s in &sources {
            v[s] = true;
        }
        v
    };
    let den: u128;
    match eps {
        None => {
            den = 1;
            let out = hop_limited_bfs(
                g,
                sources.clone(),
                h,
                forbidden.clone(),
                false,
                &cfg.with_salt(22),
                &mut log,
            )?;
            for (u, o) in out.iter().enumerate() {
                if !is_source[u] {
                    continue;
                }
                for e in &o.entries {
                    items[u].push(AggItem::new(e.source as u64, e.dist, [u as u64, 0]));
                }
            }
        }
        Some((eps_num, eps_den)) => {
            let est = approx_msssp(
                g,
                sources.clone(),
                h,
                eps_num,
                eps_den,
                forbidden.clone(),
                &cfg.with_salt(23),
                &mut log,
            )?;
            den = est.q_den;
            for (u, per_src) in est.per_node.iter().enumerate() {
                if !is_source[u] {
                    continue;
                }
                for (&src, &(level, d)) in per_src {
                    items[u].push(AggItem::new(src as u64, d, [u as u64, level as u64]));
                }
            }
        }
    }

    let retain = Arc::new({
        let mut v = vec![false; n];
        for &x in &p.vertices {
            v[x] = true;
        }
        v
    });
    // Scaled payloads (distances up to the hop cap, level indices) may
    // exceed the base graph's field width; size the broadcast words for
    // them.
    let payload_max = match eps {
        None => g.w_max(),
        Some((en, ed)) => g.w_max().max(scaled_cap(h.max(1), en, ed)),
    };
    let agg = broadcast_aggregate_with_dims(
        g,
        tree,
        AggMode::Concat,
        items,
        retain,
        crate::sim::WordDims::new(n, payload_max),
        &cfg.with_salt(24),
        &mut log,
    )?;

    // Assemble at the path vertices (all hold the identical broadcast data;
    // computed once here).
    let k = sources.len();
    let index: BTreeMap<usize, usize> = sources.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut dist = vec![vec![INF; k]; k];
    for i in 0..k {
        dist[i][i] = 0;
    }
    let eps_num = eps.map(|(a, _)| a).unwrap_or(1);
    for item in &agg[p.s].items {
        let src = item.key as usize;
        let node = item.aux[0] as usize;
        let (Some(&a), Some(&b)) = (index.get(&src), index.get(&node)) else {
            continue;
        };
        let num = match eps {
            None => item.value as u128,
            Some(_) => ((item.value as u128) * (eps_num as u128)) << item.aux[1],
        };
        if num < dist[a][b] {
            dist[a][b] = num;
        }
    }
    let overlay = OverlayData {
        ids: sources,
        index,
        dist,
        den,
    };
    let assembled = assemble(g, p, &overlay, eps.is_none())?;

    // Exact variant: publish the per-edge minima everywhere (cheap, h_st
    // keys); the approximate rationals stay with the path vertices.
    if eps.is_none() {
        let minima: Vec<Vec<AggItem>> = (0..n)
            .map(|v| {
                if v == p.s {
                    assembled
                        .per_edge
                        .iter()
                        .enumerate()
                        .map(|(j, e)| AggItem::new(j as u64, e.weight, [0, 0]))
                        .collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        broadcast_aggregate_retaining(
            g,
            tree_for_minima,
            AggMode::MinPerKey {
                key_count: p.h_st as u64,
            },
            minima,
            Arc::new(vec![true; n]),
            &cfg.with_salt(26),
            &mut log,
        )?;
    }

    let routing = if eps.is_none() {
        RoutingSeed::SampledSources {
            sources: overlay.ids.clone(),
            h,
        }
    } else {
        RoutingSeed::None
    };
    Ok(AlgoRun {
        result: RPathsOutcome {
            result: RPathsResult {
                per_edge: assembled.per_edge,
                scale: assembled.scale,
                sentinel: g.sentinel(),
            },
            routing,
        },
        log,
    })
}

/// Exact directed unweighted replacement paths, correct with high
/// probability over the sampled set.
pub fn rpaths_dirunw_sampling(
    g: &Graph,
    p: &PathSpec,
    opts: &SamplingOptions,
    cfg: &SimConfig,
) -> Result<AlgoRun<RPathsOutcome>, AlgoError> {
    assert!(g.directed() && !g.weighted(), "dirunw algorithm");
    run_skeleton(g, p, opts, None, cfg)
}

/// `(1 + eps_num/eps_den)`-approximate directed weighted replacement paths;
/// weights are exact rationals over `result.scale`.
pub fn rpaths_dirw_approx(
    g: &Graph,
    p: &PathSpec,
    eps_num: u64,
    eps_den: u64,
    cfg: &SimConfig,
) -> Result<AlgoRun<RPathsOutcome>, AlgoError> {
    assert!(g.directed() && g.weighted(), "dirw approx algorithm");
    assert!(eps_num > 0 && eps_den > 0);
    run_skeleton(
        g,
        p,
        &SamplingOptions::default(),
        Some((eps_num, eps_den)),
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{layered_graph, random_graph, LayeredParams};
    use crate::oracle;

    #[test]
    fn directed_cycle_unique_detour_is_exact() {
        // C_8 directed; path = one half, replacement wraps the other way.
        let n = 8;
        let edges = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
        let g = Graph::new(n, true, false, edges).unwrap();
        let p = PathSpec::new(&g, vec![0, 1, 2, 3]).unwrap();
        let run =
            rpaths_dirunw_sampling(&g, &p, &SamplingOptions::default(), &SimConfig::new(3))
                .unwrap();
        let want = oracle::oracle_rpaths(&g, &p);
        let got: Vec<Weight> = run.result.result.per_edge.iter().map(|e| e.weight).collect();
        assert_eq!(got, want);
        // Every replacement wraps the whole cycle: weight 8... via the other
        // side: 0..3 path edges replaced by 0 -> 7 -> .. -> 3? Directed:
        // only forward direction exists, so the replacement goes all the
        // way around: weight n - 1... the oracle agrees, which is the test.
    }

    #[test]
    fn random_dag_like_instances_match_oracle_on_every_seed() {
        for seed in 1..=20 {
            let (g, s, t) = layered_graph(LayeredParams {
                n: 64,
                layers: 7,
                fwd_degree: 2.5,
                weighted: false,
                w_max: 1,
                seed,
            })
            .unwrap();
            let p = PathSpec::from_endpoints(&g, s, t).unwrap();
            let run =
                rpaths_dirunw_sampling(&g, &p, &SamplingOptions::default(), &SimConfig::new(seed))
                    .unwrap();
            let want = oracle::oracle_rpaths(&g, &p);
            let got: Vec<Weight> =
                run.result.result.per_edge.iter().map(|e| e.weight).collect();
            assert_eq!(got, want, "seed {seed}");
        }
    }

    #[test]
    fn forced_tiny_probability_demonstrates_the_failure_mode() {
        // Two parallel routes: the two-hop input path and a thirty-hop
        // bypass, which is every edge's only detour. It is longer than the
        // hop budget, so with a tiny sampling probability an unlucky seed
        // misses it and the result disagrees with the oracle; a fresh seed
        // with the same tiny probability recovers.
        let n = 33;
        let mut edges: Vec<(usize, usize, u64)> = vec![(0, 1, 1), (1, 2, 1), (0, 3, 1)];
        for i in 3..n - 1 {
            edges.push((i, i + 1, 1));
        }
        edges.push((n - 1, 2, 1));
        let g = Graph::new(n, true, false, edges).unwrap();
        let p = PathSpec::new(&g, vec![0, 1, 2]).unwrap();
        let opts = SamplingOptions {
            sample_prob_override: Some(0.02),
        };
        let want = oracle::oracle_rpaths(&g, &p);

        let mut failed_seed = None;
        let mut good_seed = None;
        for seed in 0..200 {
            let run = rpaths_dirunw_sampling(&g, &p, &opts, &SimConfig::new(seed)).unwrap();
            let got: Vec<Weight> =
                run.result.result.per_edge.iter().map(|e| e.weight).collect();
            if got != want && failed_seed.is_none() {
                failed_seed = Some(seed);
            }
            if got == want && good_seed.is_none() {
                good_seed = Some(seed);
            }
            if failed_seed.is_some() && good_seed.is_some() {
                break;
            }
        }
        assert!(
            failed_seed.is_some(),
            "expected at least one miss at prob 0.02"
        );
        assert!(good_seed.is_some(), "expected a reseed to succeed");
    }

    #[test]
    fn approx_never_underestimates_and_respects_ratio() {
        let mut done = 0;
        for seed in 0..30 {
            let Ok(g) = random_graph(28, 0.18, true, true, 30, seed) else {
                continue;
            };
            let Ok(p) = PathSpec::from_endpoints(&g, 0, 17) else {
                continue;
            };
            if p.h_st < 2 {
                continue;
            }
            let run = rpaths_dirw_approx(&g, &p, 1, 4, &SimConfig::new(seed)).unwrap();
            let r = &run.result.result;
            let want = oracle::oracle_rpaths(&g, &p);
            for (j, e) in r.per_edge.iter().enumerate() {
                let w = e.weight as u128;
                let den = r.scale as u128;
                if want[j] >= g.sentinel() {
                    assert!(w >= g.sentinel() as u128 * den, "seed {seed} edge {j}");
                    continue;
                }
                assert!(w >= want[j] as u128 * den, "seed {seed} edge {j} underestimates");
                assert!(
                    4 * w <= 5 * want[j] as u128 * den,
                    "seed {seed} edge {j}: ratio above 1.25"
                );
            }
            done += 1;
            if done >= 10 {
                break;
            }
        }
        assert!(done >= 6, "only {done} instances");
    }

    #[test]
    fn unit_weight_approx_matches_exact_sampling() {
        for seed in [2, 5] {
            let (g, s, t) = layered_graph(LayeredParams {
                n: 48,
                layers: 6,
                fwd_degree: 2.5,
                weighted: false,
                w_max: 1,
                seed,
            })
            .unwrap();
            // Same topology, weight-1 weighted graph for the approx variant.
            let gw = Graph::new(
                g.n(),
                true,
                true,
                g.edges().to_vec(),
            )
            .unwrap();
            let p = PathSpec::from_endpoints(&gw, s, t).unwrap();
            let approx = rpaths_dirw_approx(&gw, &p, 1, 4, &SimConfig::new(seed)).unwrap();
            let want = oracle::oracle_rpaths(&gw, &p);
            let r = &approx.result.result;
            for (j, e) in r.per_edge.iter().enumerate() {
                if want[j] >= gw.sentinel() {
                    assert!(e.weight as u128 >= gw.sentinel() as u128 * r.scale as u128);
                } else {
                    // Unit weights: scaling degenerates, estimates exact.
                    assert_eq!(e.weight as u128, want[j] as u128 * r.scale as u128, "seed {seed} edge {j}");
                }
            }
        }
    }
}
