//! Exact minimum weight cycle and all-nodes shortest cycle on directed and
//! undirected instances, checked against the sequential oracle.
//!
//! Run with: cargo run --example min_weight_cycle

use congest_graphs::graph::random_graph;
use congest_graphs::mwc::{mwc_directed, mwc_undirected};
use congest_graphs::oracle;
use congest_graphs::sim::SimConfig;

fn main() {
    let gd = random_graph(24, 0.2, true, true, 40, 5).expect("connected instance");
    let run = mwc_directed(&gd, &SimConfig::new(5)).unwrap();
    let (want, want_ansc) = oracle::oracle_mwc_ansc(&gd);
    println!(
        "directed: mwc = {} (oracle {want}), witness {:?}, rounds {}",
        run.result.mwc_weight,
        run.result.witness,
        run.log.rounds()
    );
    assert_eq!(run.result.mwc_weight, want);
    assert_eq!(run.result.ansc.as_deref(), Some(&want_ansc[..]));

    let gu = random_graph(24, 0.18, true, false, 40, 6).expect("connected instance");
    let run = mwc_undirected(&gu, &SimConfig::new(6)).unwrap();
    let (want, want_ansc) = oracle::oracle_mwc_ansc(&gu);
    println!(
        "undirected: mwc = {} (oracle {want}), h_cyc = {:?}",
        run.result.mwc_weight, run.result.h_cyc
    );
    assert_eq!(run.result.mwc_weight, want);
    assert_eq!(run.result.ansc.as_deref(), Some(&want_ansc[..]));
    println!("per-node shortest cycles: {:?}", run.result.ansc.unwrap());
}
