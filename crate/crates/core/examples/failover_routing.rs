//! Build per-edge routing tables, fail each input-path edge in turn, and
//! trace the replacement path; then do the same with the undirected
//! on-the-fly scheme that stores witnesses only at s.
//!
//! Run with: cargo run --example failover_routing

use congest_graphs::graph::{random_graph, PathSpec};
use congest_graphs::reconstruct::{
    build_rpath_tables, onfly_construct_undirected, route_failover, undirected_onfly_inputs,
    OnFlyOutcome, RpAlgo,
};
use congest_graphs::sim::SimConfig;

fn main() {
    let g = random_graph(24, 0.18, true, false, 30, 9).expect("connected instance");
    let p = PathSpec::from_endpoints(&g, 0, 15).expect("reachable pair");
    let cfg = SimConfig::new(9);
    println!("input path {:?}", p.vertices);

    let (_, routes, mut log) = build_rpath_tables(&g, &p, RpAlgo::Undirected, &cfg).unwrap();
    println!("tables built; h_rep = {}", routes.h_rep());
    for j in 0..p.h_st {
        let (u, v) = p.edge(j);
        match route_failover(&g, &p, routes.next.clone(), (u, v), &cfg, &mut log).unwrap() {
            OnFlyOutcome::Routed(tr) => println!(
                "fail ({u:2},{v:2}): {:?} weight {} in {} rounds",
                tr.vertices, tr.weight, tr.rounds
            ),
            OnFlyOutcome::NoReplacement => println!("fail ({u:2},{v:2}): no replacement"),
        }
    }

    let (_, witnesses, sp, tp, mut log) = undirected_onfly_inputs(&g, &p, &cfg).unwrap();
    let (u, v) = p.edge(0);
    if let OnFlyOutcome::Routed(tr) =
        onfly_construct_undirected(&g, &p, &witnesses, sp, tp, (u, v), &cfg, &mut log).unwrap()
    {
        println!(
            "on-the-fly fail ({u},{v}): weight {} in {} rounds, {} stored entries per node",
            tr.weight,
            tr.rounds,
            tr.storage_audit.unwrap()
        );
    }
}
