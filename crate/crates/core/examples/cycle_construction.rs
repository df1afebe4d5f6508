//! Materialize minimum cycles through chosen vertices from an ANSC run,
//! in both routing-table and on-the-fly modes.
//!
//! Run with: cargo run --example cycle_construction

use congest_graphs::graph::random_graph;
use congest_graphs::mwc::ansc;
use congest_graphs::reconstruct::construct_cycle;
use congest_graphs::sim::SimConfig;

fn main() {
    let g = random_graph(18, 0.2, true, true, 25, 13).expect("connected instance");
    let cfg = SimConfig::new(13);
    let run = ansc(&g, &cfg).unwrap();
    let weights = run.result.ansc.clone().unwrap();

    for through in 0..g.n() {
        for onfly in [false, true] {
            let out = construct_cycle(&g, &run.result, through, onfly, &cfg).unwrap();
            match out.result {
                None => {
                    println!("node {through:2}: on no cycle");
                    break;
                }
                Some(tr) => {
                    assert_eq!(tr.weight, weights[through]);
                    if !onfly {
                        println!(
                            "node {through:2}: cycle {:?} weight {} in {} rounds",
                            tr.vertices, tr.weight, tr.rounds
                        );
                    }
                }
            }
        }
    }
}
