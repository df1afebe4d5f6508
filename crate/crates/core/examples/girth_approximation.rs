//! (2 - 1/g)-approximate girth from truncated neighborhoods plus sampled
//! BFS, compared with the exact girth oracle over a seed sweep.
//!
//! Run with: cargo run --example girth_approximation

use congest_graphs::graph::random_graph;
use congest_graphs::mwc::girth_approx;
use congest_graphs::oracle::oracle_girth;
use congest_graphs::sim::SimConfig;

fn main() {
    let mut exact = 0;
    let mut total = 0;
    for seed in 0..20 {
        let Ok(g) = random_graph(48, 0.07, false, false, 1, seed) else {
            continue;
        };
        let want = oracle_girth(&g);
        let run = girth_approx(&g, &SimConfig::new(seed)).unwrap();
        let got = run.result.mwc_weight;
        if want >= g.sentinel() {
            println!("seed {seed:2}: forest, reported acyclic = {}", run.result.is_acyclic());
            continue;
        }
        total += 1;
        if got == want {
            exact += 1;
        }
        println!(
            "seed {seed:2}: girth {want}, estimate {got} (ratio {:.3}), rounds {}",
            got as f64 / want as f64,
            run.log.rounds()
        );
        assert!(got >= want && got * want <= 2 * want * want - want);
    }
    println!("exact on {exact}/{total} cyclic instances");
}
