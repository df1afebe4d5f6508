//! Compute exact replacement paths on a directed weighted instance with the
//! all-pairs reduction, cross-check with the iterated shortest-path
//! algorithm, and verify both against the sequential removal oracle.
//!
//! Run with: cargo run --example replacement_paths

use congest_graphs::graph::{random_graph, PathSpec};
use congest_graphs::oracle;
use congest_graphs::rpaths::{rpaths_dirw_apsp, rpaths_iterated_sssp};
use congest_graphs::sim::SimConfig;

fn main() {
    let g = random_graph(32, 0.18, true, true, 60, 7).expect("connected instance");
    let p = PathSpec::from_endpoints(&g, 0, 21).expect("reachable pair");
    println!(
        "input path: {:?} (h_st = {}, weight = {})",
        p.vertices, p.h_st, p.delta_st
    );

    let cfg = SimConfig::new(7);
    let via_apsp = rpaths_dirw_apsp(&g, &p, &cfg).unwrap();
    let via_iter = rpaths_iterated_sssp(&g, &p, &cfg).unwrap();
    let oracle_weights = oracle::oracle_rpaths(&g, &p);

    println!("edge  apsp-reduction  iterated-sssp  oracle");
    for j in 0..p.h_st {
        let (u, v) = p.edge(j);
        let a = via_apsp.result.result.per_edge[j].weight;
        let b = via_iter.result.result.per_edge[j].weight;
        println!("({u:2},{v:2})  {a:>12}  {b:>12}  {:>6}", oracle_weights[j]);
        assert_eq!(a, b);
        assert_eq!(a, oracle_weights[j]);
    }
    println!(
        "rounds: apsp-reduction {} vs iterated {} (h_st SSSP phases)",
        via_apsp.log.rounds(),
        via_iter.log.rounds()
    );
    println!(
        "second simple shortest path weight: {}",
        via_apsp.result.result.sisp2()
    );
}
