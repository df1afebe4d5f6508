//! Charged-round accounting: measured rounds stay primary, but phases that
//! play the role of a black-box SSSP or APSP can additionally be priced at
//! their cited complexity, for comparing an implementation against the
//! bound it stands in for.
//!
//! Run with: cargo run --example charged_accounting

use congest_graphs::graph::{random_graph, PathSpec};
use congest_graphs::rpaths::rpaths_iterated_sssp;
use congest_graphs::sim::{ChargingConfig, SimConfig};

fn main() {
    let g = random_graph(40, 0.12, true, true, 50, 21).expect("connected instance");
    let p = PathSpec::from_endpoints(&g, 0, 31).expect("reachable pair");
    let run = rpaths_iterated_sssp(&g, &p, &SimConfig::new(21)).unwrap();

    let combined = run.log.combined(g.n(), 6, Some(&ChargingConfig::default()));
    println!("h_st = {} shortest-path phases", p.h_st);
    println!("measured rounds: {}", combined.rounds);
    println!(
        "charged rounds (each SSSP priced at sqrt(n) * D^(1/4) + D): {}",
        combined.charged_rounds.unwrap()
    );
    for phase in &combined.phases {
        println!("  {} [{:?}]: {} rounds", phase.label, phase.kind, phase.report.rounds);
    }
}
