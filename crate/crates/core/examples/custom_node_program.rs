//! Write your own node program and run it under the simulator.
//!
//! The program below floods a token from node 0 and counts, at every node,
//! the round it was first reached — a minimal template showing the three
//! handler hooks (`init`, `round`, `finish`), the one-word-per-neighbor
//! budget, and deterministic per-node randomness.
//!
//! Run with: cargo run --example custom_node_program

use congest_graphs::graph::random_graph;
use congest_graphs::sim::{
    run_program, InitCtx, LocalView, NodeProgram, RoundCtx, SimConfig, Word, WordDims,
};

struct FloodToken;

impl NodeProgram for FloodToken {
    type State = Option<u64>; // round first reached
    type Output = Option<u64>;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> Self::State {
        if view.node == 0 {
            for inc in &view.incidences {
                ctx.send(inc.to, Word::new(&[0]));
            }
            Some(0)
        } else {
            None
        }
    }

    fn round(&self, state: &mut Self::State, ctx: &mut RoundCtx) -> bool {
        if state.is_none() && !ctx.inbox().is_empty() {
            *state = Some(ctx.round());
            let from = ctx.inbox()[0].0;
            for inc in &ctx.view.incidences {
                if inc.to != from {
                    ctx.send(inc.to, Word::new(&[0]));
                }
            }
        }
        true // always vote halt; message arrivals re-activate us
    }

    fn finish(&self, _view: &LocalView, state: Self::State) -> Self::Output {
        state
    }
}

fn main() {
    let g = random_graph(24, 0.15, false, false, 1, 42).expect("connected instance");
    let cfg = SimConfig::new(42);
    let run = run_program(&g, &FloodToken, &cfg, WordDims::new(g.n(), g.w_max())).unwrap();

    println!("flood finished in {} rounds", run.report.rounds);
    println!(
        "words sent: {}, word budget: {} bits, max edge load: {}",
        run.report.words_sent, run.report.word_bits, run.report.max_edge_load
    );
    for (v, reached) in run.outputs.iter().enumerate() {
        println!("node {v:2}: reached at round {:?}", reached.unwrap());
    }
}
