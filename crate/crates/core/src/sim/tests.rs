//! Simulator contract tests: termination, bandwidth enforcement, timers,
//! and determinism.

use super::*;
use crate::graph::Graph;

/// Does nothing; halts immediately in init.
struct Idle;

impl NodeProgram for Idle {
    type State = ();
    type Output = ();
    fn init(&self, _v: &LocalView, _ctx: &mut InitCtx) {}
    fn round(&self, _s: &mut (), _ctx: &mut RoundCtx) -> bool {
        true
    }
    fn finish(&self, _v: &LocalView, _s: ()) {}
}

/// Sends `words` words to its smallest neighbor in round 1, each with
/// `fields` fields.
struct Oversender {
    words: usize,
    fields: usize,
}

impl NodeProgram for Oversender {
    type State = ();
    type Output = ();
    fn init(&self, view: &LocalView, ctx: &mut InitCtx) {
        if view.node == 0 {
            ctx.wake_at(1);
        }
    }
    fn round(&self, _s: &mut (), ctx: &mut RoundCtx) -> bool {
        if ctx.view.node == 0 && ctx.round() == 1 {
            if let Some(nb) = ctx.view.neighbor_ids().next() {
                for _ in 0..self.words {
                    ctx.send(nb, Word::new(&vec![0; self.fields]));
                }
            }
        }
        true
    }
    fn finish(&self, _v: &LocalView, _s: ()) {}
}

/// Node 0 schedules two delayed words (+5 and +9 to two neighbors); every
/// receiver records its arrival round.
struct TwoTimers;

impl NodeProgram for TwoTimers {
    type State = Option<u64>;
    type Output = Option<u64>;
    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> Option<u64> {
        if view.node == 0 {
            ctx.wake_at(1);
            Some(0)
        } else {
            None
        }
    }
    fn round(&self, state: &mut Option<u64>, ctx: &mut RoundCtx) -> bool {
        if ctx.view.node == 0 && ctx.round() == 1 {
            let nbs: Vec<usize> = ctx.view.neighbor_ids().collect();
            ctx.send_delayed(nbs[0], Word::new(&[0]), 5);
            ctx.send_delayed(nbs[1], Word::new(&[0]), 9);
        }
        if !ctx.inbox().is_empty() && state.is_none() {
            *state = Some(ctx.round());
        }
        true
    }
    fn finish(&self, _v: &LocalView, s: Option<u64>) -> Option<u64> {
        s
    }
}

impl TwoTimers {
    fn graph() -> Graph {
        Graph::new(3, false, false, vec![(0, 1, 1), (0, 2, 1)]).unwrap()
    }
}

fn wake1_cfg(seed: u64) -> SimConfig {
    SimConfig::new(seed)
}

#[test]
fn halting_in_init_takes_zero_rounds() {
    let g = Graph::new(1, false, false, vec![]).unwrap();
    let run = run_program(&g, &Idle, &wake1_cfg(0), WordDims::new(1, 1)).unwrap();
    assert_eq!(run.report.rounds, 0);
    assert_eq!(run.report.words_sent, 0);
}

#[test]
fn oversending_two_words_is_rejected_at_round_one() {
    let g = Graph::new(2, false, false, vec![(0, 1, 1)]).unwrap();
    let err = run_program(
        &g,
        &Oversender { words: 2, fields: 1 },
        &wake1_cfg(0),
        WordDims::new(2, 1),
    )
    .unwrap_err();
    match err {
        SimError::DoubleSend {
            node,
            neighbor,
            round,
        } => {
            assert_eq!((node, neighbor, round), (0, 1, 1));
        }
        other => panic!("expected DoubleSend, got {other}"),
    }
}

#[test]
fn too_wide_word_is_rejected_with_bit_counts() {
    let g = Graph::new(2, false, false, vec![(0, 1, 1)]).unwrap();
    let err = run_program(
        &g,
        &Oversender { words: 1, fields: 9 },
        &wake1_cfg(0),
        WordDims::new(2, 1),
    )
    .unwrap_err();
    match err {
        SimError::WordTooWide {
            fields, max_fields, ..
        } => {
            assert_eq!(fields, 9);
            assert_eq!(max_fields, 4);
        }
        other => panic!("expected WordTooWide, got {other}"),
    }
}

#[test]
fn budget_exhaustion_is_a_distinct_error() {
    // A program that never quiesces: two nodes ping-pong forever.
    struct PingPong;
    impl NodeProgram for PingPong {
        type State = ();
        type Output = ();
        fn init(&self, view: &LocalView, ctx: &mut InitCtx) {
            if view.node == 0 {
                ctx.send(1, Word::new(&[0]));
            }
        }
        fn round(&self, _s: &mut (), ctx: &mut RoundCtx) -> bool {
            let me = ctx.view.node;
            if !ctx.inbox().is_empty() {
                ctx.send(1 - me, Word::new(&[0]));
            }
            true
        }
        fn finish(&self, _v: &LocalView, _s: ()) {}
    }
    let g = Graph::new(2, false, false, vec![(0, 1, 1)]).unwrap();
    let mut cfg = wake1_cfg(0);
    cfg.max_rounds = 50;
    let err = run_program(&g, &PingPong, &cfg, WordDims::new(2, 1)).unwrap_err();
    assert_eq!(err, SimError::BudgetExhausted { budget: 50 });
}

#[test]
fn virtual_time_jumps_to_earliest_timer() {
    let g = TwoTimers::graph();
    let a = run_program(&g, &TwoTimers, &wake1_cfg(0), WordDims::new(3, 1)).unwrap();
    let b = run_program(
        &g,
        &TwoTimers,
        &wake1_cfg(0).with_virtual_time(true),
        WordDims::new(3, 1),
    )
    .unwrap();
    // Node 1 hears at round 1 + 5, node 2 at 1 + 9; reported rounds match
    // with and without the optimization.
    for run in [&a, &b] {
        assert_eq!(run.outputs[1], Some(6));
        assert_eq!(run.outputs[2], Some(10));
        assert_eq!(run.report.rounds, 10);
    }
    assert_eq!(a.report.words_sent, b.report.words_sent);
}

#[test]
fn identical_configs_reproduce_identical_reports() {
    use crate::primitives::hop_limited_bfs;
    let g = crate::graph::random_graph(20, 0.2, false, false, 1, 5).unwrap();
    let mut l1 = PhaseLog::new();
    let mut l2 = PhaseLog::new();
    let cfg = SimConfig::new(42);
    let a = hop_limited_bfs(&g, vec![0, 3], 9, vec![], false, &cfg, &mut l1).unwrap();
    let b = hop_limited_bfs(&g, vec![0, 3], 9, vec![], false, &cfg, &mut l2).unwrap();
    assert_eq!(l1.rounds(), l2.rounds());
    assert_eq!(l1.words_sent(), l2.words_sent());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.entries, y.entries);
    }
}
