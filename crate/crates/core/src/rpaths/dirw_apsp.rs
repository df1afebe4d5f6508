//! Directed weighted replacement paths via an all-pairs computation on an
//! enlarged graph.
//!
//! For the input path `v_0 .. v_h`, the enlarged graph keeps every edge of
//! `G` except the path edges and adds, per path edge `j`, an exit vertex
//! `z_j_out` (hosted at `v_j`) and an entry vertex `z_j_in` (hosted at
//! `v_{j+1}`):
//!
//! * `z_j_out -> v_j` weighted by `delta(s, v_j)` (jump to the prefix),
//! * `v_{j+1} -> z_j_in` weighted by `delta(v_{j+1}, t)` (jump from the
//!   suffix),
//! * `z_j_in -> z_j_out` and `z_{j+1}_out -> z_j_in` with weight 0 (chains
//!   that let one query range over all prefix exits and suffix entries).
//!
//! The shortest `z_j_out -> z_j_in` distance is then exactly the
//! replacement weight for path edge `j`, and every enlarged edge is either
//! host-local or parallel to a real link, so the all-pairs program runs on
//! the original network at constant overhead.

use super::{AlgoError, AlgoRun, EdgeReplacement, RPathsOutcome, RPathsResult, RpWitness};
use crate::graph::{Graph, PathSpec, Weight};
use crate::primitives::{
    apsp_virtual, bfs_tree, broadcast_aggregate, sssp, AggItem, AggMode, ApspTable, Tree,
    VirtualTopology,
};
use crate::sim::{PhaseLog, SimConfig};
use std::sync::Arc;

/// Builds the enlarged topology. `delta_s[v]` and `delta_t[v]` are the
/// shortest-path distances from `s` and to `t` established by the two SSSP
/// phases.
pub(crate) fn reduction_topology(
    g: &Graph,
    p: &PathSpec,
    delta_s: &[Weight],
    delta_t: &[Weight],
) -> VirtualTopology {
    let n = g.n();
    let h = p.h_st;
    let z_out = |j: usize| n + 2 * j;
    let z_in = |j: usize| n + 2 * j + 1;
    let path_edges = p.edge_set();

    let mut arcs: Vec<(usize, usize, Weight)> = Vec::with_capacity(g.m() + 4 * h);
    for &(u, v, w) in g.edges() {
        if !path_edges.contains(&(u, v)) {
            arcs.push((u, v, w));
        }
    }
    let mut host: Vec<usize> = (0..n).collect();
    for j in 0..h {
        host.push(p.vertices[j]); // z_j_out
        host.push(p.vertices[j + 1]); // z_j_in
    }
    for j in 0..h {
        arcs.push((z_out(j), p.vertices[j], delta_s[p.vertices[j]]));
        arcs.push((p.vertices[j + 1], z_in(j), delta_t[p.vertices[j + 1]]));
        arcs.push((z_in(j), z_out(j), 0));
        if j + 1 < h {
            arcs.push((z_out(j + 1), z_in(j), 0));
        }
    }
    let w_max = arcs.iter().map(|a| a.2).max().unwrap_or(1).max(1);
    VirtualTopology {
        n_virt: n + 2 * h,
        host,
        arcs,
        w_max,
    }
}

/// Walks first-hop pointers of the enlarged table from `z_j_out` to
/// `z_j_in`, returning the deviation pair and the real detour vertices.
fn extract_witness(
    table: &ApspTable,
    n: usize,
    from: usize,
    to: usize,
) -> Option<(usize, usize, Vec<usize>)> {
    if table.dist(from, to) >= table.sentinel {
        return None;
    }
    let mut cur = from;
    let mut real: Vec<usize> = Vec::new();
    let mut steps = 0;
    while cur != to {
        cur = table.first(cur, to)?;
        if cur < n {
            real.push(cur);
        }
        steps += 1;
        if steps > table.n {
            return None; // corrupt table
        }
    }
    let (&v_a, &v_b) = (real.first()?, real.last()?);
    Some((v_a, v_b, real))
}

/// Exact directed weighted replacement paths; the per-edge weights of the
/// enlarged all-pairs table are aggregated so every node holds the result.
pub fn rpaths_dirw_apsp(
    g: &Graph,
    p: &PathSpec,
    cfg: &SimConfig,
) -> Result<AlgoRun<RPathsOutcome>, AlgoError> {
    assert!(g.directed() && g.weighted(), "dirw algorithm");
    super::validate_input(g, p)?;
    let mut log = PhaseLog::new();
    let sent = g.sentinel();

    // Phase 1+2: establish delta(s, v) and delta(v, t).
    let from_s = sssp(g, p.s, vec![], false, &cfg.with_salt(1), &mut log)?;
    let to_t = sssp(g, p.t, vec![], true, &cfg.with_salt(2), &mut log)?;
    let delta_s: Vec<Weight> = from_s.iter().map(|o| o.dist).collect();
    let delta_t: Vec<Weight> = to_t.iter().map(|o| o.dist).collect();
    debug_assert_eq!(delta_s[p.t], p.delta_st);

    // Phase 3: all-pairs over the enlarged graph.
    let topo = Arc::new(reduction_topology(g, p, &delta_s, &delta_t));
    let table = apsp_virtual(g, topo.clone(), &cfg.with_salt(3), &mut log, "apsp-on-reduction")?;

    // Per-edge weights and witnesses, read where they were computed.
    let n = g.n();
    let mut items: Vec<Vec<AggItem>> = vec![Vec::new(); n];
    let mut witnesses: Vec<Option<(usize, usize, Vec<usize>)>> = vec![None; p.h_st];
    for j in 0..p.h_st {
        let (zo, zi) = (n + 2 * j, n + 2 * j + 1);
        let host = p.vertices[j + 1];
        let d = table.dist(zo, zi);
        let w = extract_witness(&table, n, zo, zi);
        let (value, aux) = match &w {
            Some((v_a, v_b, _)) if d < table.sentinel => (d.min(sent), [*v_a as u64, *v_b as u64]),
            _ => (sent, [n as u64, n as u64]),
        };
        items[host].push(AggItem::new(j as u64, value, aux));
        witnesses[j] = w;
    }

    // Phase 4: per-edge minima (single contributor each) broadcast to all.
    let bfs = bfs_tree(g, p.s, true, &cfg.with_salt(4), &mut log)?;
    let tree = Arc::new(Tree::from_bfs(p.s, &bfs));
    let agg = broadcast_aggregate(
        g,
        tree,
        AggMode::MinPerKey {
            key_count: p.h_st as u64,
        },
        items,
        true,
        &cfg.with_salt(5),
        &mut log,
    )?;

    let per_edge: Vec<EdgeReplacement> = (0..p.h_st)
        .map(|j| {
            let item = agg[0].items[j];
            debug_assert_eq!(item.key, j as u64);
            let missing = item.value >= sent;
            let witness = witnesses[j].as_ref().filter(|_| !missing).map(
                |(v_a, v_b, _)| RpWitness::Detour {
                    v_a: *v_a,
                    v_b: *v_b,
                },
            );
            let hops = witnesses[j].as_ref().filter(|_| !missing).map(|(v_a, v_b, real)| {
                let a = p.position(*v_a).expect("deviation on path") as u64;
                let b = p.position(*v_b).expect("rejoin on path") as u64;
                a + (real.len() as u64 - 1) + (p.h_st as u64 - b)
            });
            EdgeReplacement {
                weight: item.value,
                witness,
                hops,
            }
        })
        .collect();

    let result = RPathsResult {
        per_edge,
        scale: 1,
        sentinel: sent,
    };
    Ok(AlgoRun {
        result: RPathsOutcome {
            result,
            routing: super::RoutingSeed::DetourTargets,
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
    fn single_edge_path_with_two_hop_detour() {
        // s -> t direct (weight 9, the shortest is s->x->t? No: make direct
        // the shortest); detour s -> x -> t of weight 7 replaces it.
        let g = Graph::new(3, true, true, vec![(0, 2, 5), (0, 1, 3), (1, 2, 4)]).unwrap();
        let p = PathSpec::new(&g, vec![0, 2]).unwrap();
        let run = rpaths_dirw_apsp(&g, &p, &SimConfig::new(1)).unwrap();
        assert_eq!(run.result.result.per_edge[0].weight, 7);
        assert_eq!(
            run.result.result.per_edge[0].witness,
            Some(RpWitness::Detour { v_a: 0, v_b: 2 })
        );
    }

    #[test]
    fn matches_oracle_on_random_instances() {
        let mut done = 0;
        for seed in 0..30 {
            let Ok(g) = random_graph(24, 0.18, true, true, 50, seed) else {
                continue;
            };
            let Ok(p) = PathSpec::from_endpoints(&g, 1, 20) else {
                continue;
            };
            if p.h_st < 2 {
                continue;
            }
            let run = rpaths_dirw_apsp(&g, &p, &SimConfig::new(seed)).unwrap();
            let want = oracle::oracle_rpaths(&g, &p);
            let got: Vec<Weight> = run.result.result.per_edge.iter().map(|e| e.weight).collect();
            assert_eq!(got, want, "seed {seed}");
            done += 1;
        }
        assert!(done >= 10, "only {done} instances exercised");
    }

    #[test]
    fn gadget_k3_all_ones_matches_lemma_bound_and_oracle() {
        let spec = GadgetSpec {
            family: GadgetFamily::DirwRpaths,
            k: 3,
            s_a: vec![true; 9],
            s_b: vec![true; 9],
            intersecting: true,
            seed: 0,
        };
        let inst = gen_gadget(&spec).unwrap();
        let p = inst.path.unwrap();
        let run = rpaths_dirw_apsp(&inst.graph, &p, &SimConfig::new(7)).unwrap();
        let sisp2 = run.result.result.sisp2();
        assert!(sisp2 <= 62, "lemma bound: {sisp2}");
        assert_eq!(sisp2, oracle::oracle_sisp2(&inst.graph, &p));
        let want = oracle::oracle_rpaths(&inst.graph, &p);
        let got: Vec<Weight> = run.result.result.per_edge.iter().map(|e| e.weight).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn reduction_soundness_oracle_on_materialized_graph() {
        // Materialize the enlarged graph explicitly and check its shortest
        // z-pair distances against the per-edge oracle, independently of the
        // distributed path.
        for seed in [3, 11] {
            let g = random_graph(18, 0.25, true, true, 30, seed).unwrap();
            let Ok(p) = PathSpec::from_endpoints(&g, 0, 9) else {
                continue;
            };
            let (ds, _) = oracle::dijkstra(&g, p.s, &oracle::Forbidden::none());
            let (dt, _) = oracle::dijkstra_to(&g, p.t, &oracle::Forbidden::none());
            let topo = reduction_topology(&g, &p, &ds, &dt);
            let big = Graph::new(
                topo.n_virt,
                true,
                true,
                topo.arcs.clone(),
            );
            // The enlarged graph may be disconnected in the underlying sense
            // only if G was a path; skip such degenerate cases.
            let Ok(big) = big else { continue };
            for j in 0..p.h_st {
                let (zo, zi) = (g.n() + 2 * j, g.n() + 2 * j + 1);
                let (d, _) = oracle::shortest_path_oracle(&big, zo, zi);
                let (u, v) = p.edge(j);
                let want = oracle::oracle_replacement_weight(&g, &p, u, v);
                let d = if d >= big.sentinel() { g.sentinel() } else { d.min(g.sentinel()) };
                assert_eq!(d, want, "seed {seed} edge {j}");
            }
        }
    }
}
