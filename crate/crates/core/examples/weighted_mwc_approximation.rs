//! (2 + eps')-approximate minimum weight cycle for undirected weighted
//! graphs via weight scaling, eps' = 2 * eps. Reported weights are exact
//! rationals over a fixed denominator.
//!
//! Run with: cargo run --example weighted_mwc_approximation

use congest_graphs::graph::random_graph;
use congest_graphs::mwc::mwc_undirw_approx;
use congest_graphs::oracle::oracle_mwc;
use congest_graphs::sim::SimConfig;

fn main() {
    for seed in 0..6 {
        let Ok(g) = random_graph(24, 0.14, true, false, 16, seed) else {
            continue;
        };
        let want = oracle_mwc(&g);
        let run = mwc_undirw_approx(&g, 1, 4, &SimConfig::new(seed)).unwrap();
        let r = &run.result;
        if want >= g.sentinel() {
            println!("seed {seed}: acyclic");
            continue;
        }
        let estimate = r.mwc_weight as f64 / r.scale as f64;
        println!(
            "seed {seed}: mwc {want}, estimate {estimate:.3} (ratio {:.3}), scaled hops {:?}, rounds {}",
            estimate / want as f64,
            r.scaled_hop_len,
            run.log.rounds()
        );
        // Never below the truth, never above (2 + 2*0.25) = 2.5x.
        assert!(r.mwc_weight as u128 >= want as u128 * r.scale as u128);
        assert!(2 * r.mwc_weight as u128 <= 5 * want as u128 * r.scale as u128);
    }
}
