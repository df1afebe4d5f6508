//! Replacement paths on directed unweighted graphs by hop-limited search
//! plus sampled stitching of long detours, with the documented
//! low-probability failure mode forced via a tiny sampling probability.
//!
//! Run with: cargo run --example sampled_replacement_paths

use congest_graphs::graph::{layered_graph, LayeredParams, PathSpec};
use congest_graphs::oracle;
use congest_graphs::rpaths::{rpaths_dirunw_sampling, SamplingOptions};
use congest_graphs::sim::SimConfig;

fn main() {
    let (g, s, t) = layered_graph(LayeredParams {
        n: 96,
        layers: 9,
        fwd_degree: 2.5,
        weighted: false,
        w_max: 1,
        seed: 3,
    })
    .unwrap();
    let p = PathSpec::from_endpoints(&g, s, t).unwrap();
    println!("layered instance: n = {}, h_st = {}", g.n(), p.h_st);

    let run =
        rpaths_dirunw_sampling(&g, &p, &SamplingOptions::default(), &SimConfig::new(3)).unwrap();
    let want = oracle::oracle_rpaths(&g, &p);
    let got: Vec<u64> = run.result.result.per_edge.iter().map(|e| e.weight).collect();
    println!("distributed: {got:?}");
    println!("oracle:      {want:?}");
    assert_eq!(got, want);
    println!("exact on this seed; rounds = {}", run.log.rounds());

    // Force the failure mode: undersample so the long-detour overlay misses.
    let tiny = SamplingOptions {
        sample_prob_override: Some(0.01),
    };
    let mut mismatches = 0;
    for seed in 0..10 {
        let run = rpaths_dirunw_sampling(&g, &p, &tiny, &SimConfig::new(seed)).unwrap();
        let got: Vec<u64> = run.result.result.per_edge.iter().map(|e| e.weight).collect();
        if got != want {
            mismatches += 1;
        }
    }
    println!("with sampling probability 0.01: {mismatches}/10 seeds missed a detour");
}
