//! Second simple shortest path on undirected graphs via the two-tree
//! characterization, including the per-edge candidate intervals.
//!
//! Run with: cargo run --example second_shortest_path

use congest_graphs::graph::{random_graph, PathSpec};
use congest_graphs::oracle;
use congest_graphs::rpaths::{rpaths_undirected, sisp2};
use congest_graphs::sim::SimConfig;

fn main() {
    let g = random_graph(28, 0.16, true, false, 40, 11).expect("connected instance");
    let p = PathSpec::from_endpoints(&g, 0, 17).expect("reachable pair");
    println!(
        "input path: {:?} (h_st = {}, weight = {})",
        p.vertices, p.h_st, p.delta_st
    );

    let run = rpaths_undirected(&g, &p, &SimConfig::new(11)).unwrap();
    let r = &run.result.result;
    for (j, e) in r.per_edge.iter().enumerate() {
        let (u, v) = p.edge(j);
        println!(
            "edge ({u:2},{v:2}): replacement {:>4}  witness {:?}",
            e.weight, e.witness
        );
    }
    let second = sisp2(r);
    println!("2-SiSP weight: {second}");
    assert_eq!(second, oracle::oracle_sisp2(&g, &p));
    println!("oracle agrees; total rounds {}", run.log.rounds());
}
