//! Node programs for the routing phases.

use crate::graph::{Graph, PathSpec};
use crate::rpaths::AlgoError;
use crate::sim::{
    InitCtx, LocalView, NodeProgram, PhaseLog, RoundCtx, SimConfig, SimError, Subroutine, Word,
};
use std::sync::Arc;

use super::RouteTrace;

const TAG_NOTIFY: u64 = 0;
const TAG_TOKEN: u64 = 1;
const TAG_FIND: u64 = 2;
const TAG_CLAIM: u64 = 3;

/// A leg-structured token walk: the token carries its leg index; each node
/// holds, per leg, its own next hop (derived from its local table rows).
/// Output: visits as (round, leg, successor).
#[derive(Debug, Clone)]
pub(crate) struct TokenWalk {
    /// next[node][leg]: next hop when holding the token on this leg.
    pub next: Arc<Vec<Vec<Option<usize>>>>,
    /// Target vertex per leg: reaching it advances to the next leg.
    pub leg_targets: Arc<Vec<usize>>,
    pub start: usize,
    /// Hop budget before declaring a pointer cycle.
    pub hop_budget: u64,
}

#[derive(Debug, Default, Clone)]
pub(crate) struct TokenVisits {
    pub visits: Vec<(u64, usize)>, // (round, successor or self when final)
    pub done: bool,
}

impl NodeProgram for TokenWalk {
    type State = TokenVisits;
    type Output = TokenVisits;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> TokenVisits {
        let me = view.node;
        let mut state = TokenVisits::default();
        if me == self.start {
            // Emit the first hop immediately so traversal measures exactly
            // the walk's hop count.
            let mut leg = 0usize;
            while leg < self.leg_targets.len() && self.leg_targets[leg] == me {
                leg += 1;
            }
            if leg >= self.leg_targets.len() {
                state.visits.push((0, me));
                state.done = true;
            } else {
                match self.next[me][leg] {
                    Some(nxt) => {
                        state.visits.push((0, nxt));
                        ctx.send(nxt, Word::new(&[TAG_TOKEN, leg as u64, 1]));
                    }
                    None => state.visits.push((0, me)),
                }
            }
        }
        state
    }

    fn round(&self, state: &mut TokenVisits, ctx: &mut RoundCtx) -> bool {
        let me = ctx.view.node;
        let mut holding: Option<(u64, u64)> = None; // (leg, hops)
        for (_, word) in ctx.inbox() {
            if word[0] == TAG_TOKEN {
                holding = Some((word[1], word[2]));
            }
        }
        let Some((mut leg, hops)) = holding else {
            return true;
        };
        // Advance through legs whose target we already are.
        while (leg as usize) < self.leg_targets.len() && self.leg_targets[leg as usize] == me {
            leg += 1;
        }
        if leg as usize >= self.leg_targets.len() {
            state.visits.push((ctx.round(), me));
            state.done = true;
            return true;
        }
        if hops >= self.hop_budget {
            // Drop the token; the orchestrator reports the cycle error.
            state.visits.push((ctx.round(), me));
            return true;
        }
        match self.next[me][leg as usize] {
            Some(nxt) => {
                state.visits.push((ctx.round(), nxt));
                ctx.send(nxt, Word::new(&[TAG_TOKEN, leg, hops + 1]));
            }
            None => {
                state.visits.push((ctx.round(), me));
            }
        }
        true
    }

    fn finish(&self, _view: &LocalView, state: TokenVisits) -> TokenVisits {
        state
    }
}

/// Assembles an ordered trace from per-node visit logs.
pub(crate) fn assemble_trace(
    g: &Graph,
    start: usize,
    outputs: &[TokenVisits],
    expect_end: usize,
) -> Result<(Vec<usize>, crate::graph::Weight), AlgoError> {
    let mut events: Vec<(u64, usize, usize)> = Vec::new(); // (round, at, successor)
    for (v, out) in outputs.iter().enumerate() {
        for &(round, succ) in &out.visits {
            events.push((round, v, succ));
        }
    }
    events.sort_unstable();
    let mut vertices = vec![start];
    let mut weight = 0;
    for (_, at, succ) in events {
        debug_assert_eq!(at, *vertices.last().unwrap());
        if succ == at {
            break;
        }
        weight += g
            .edge_weight(at, succ)
            .ok_or(AlgoError::PointerCycle(at))?;
        vertices.push(succ);
    }
    if *vertices.last().unwrap() != expect_end {
        return Err(AlgoError::PointerCycle(*vertices.last().unwrap()));
    }
    Ok((vertices, weight))
}

/// Failure notification plus table-following message: the discoverer sends
/// the failed edge's index up the input path to `s`, which then launches the
/// token along the per-edge next pointers.
struct FailoverProgram {
    path: Arc<PathSpec>,
    /// Failed edge index.
    j: u64,
    /// next[node][j] per-edge routing table.
    next: Arc<Vec<Vec<Option<usize>>>>,
    hop_budget: u64,
}

impl NodeProgram for FailoverProgram {
    type State = TokenVisits;
    type Output = TokenVisits;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> TokenVisits {
        // Discovery is an injected event at the failed edge's tail.
        if view.node == self.path.vertices[self.j as usize] {
            ctx.wake_at(1);
        }
        TokenVisits::default()
    }

    fn round(&self, state: &mut TokenVisits, ctx: &mut RoundCtx) -> bool {
        let me = ctx.view.node;
        let mut notified = me == self.path.vertices[self.j as usize] && ctx.round() == 1;
        let mut token: Option<u64> = None;
        for (_, word) in ctx.inbox() {
            match word[0] {
                TAG_NOTIFY => notified = true,
                TAG_TOKEN => token = Some(word[2]),
                _ => unreachable!("unknown failover tag"),
            }
        }
        if notified {
            if me == self.path.s {
                token = Some(0);
            } else if let Some(pos) = self.path.position(me) {
                // Climb the input path toward s.
                ctx.send(
                    self.path.vertices[pos - 1],
                    Word::new(&[TAG_NOTIFY, self.j, 0]),
                );
            }
        }
        if let Some(hops) = token {
            if me == self.path.t {
                state.visits.push((ctx.round(), me));
                state.done = true;
            } else if hops >= self.hop_budget {
                state.visits.push((ctx.round(), me));
            } else {
                match self.next[me][self.j as usize] {
                    Some(nxt) => {
                        state.visits.push((ctx.round(), nxt));
                        ctx.send(nxt, Word::new(&[TAG_TOKEN, self.j, hops + 1]));
                    }
                    None => state.visits.push((ctx.round(), me)),
                }
            }
        }
        true
    }

    fn finish(&self, _view: &LocalView, state: TokenVisits) -> TokenVisits {
        state
    }
}

/// Outcome of a failover routing attempt.
#[derive(Debug, Clone)]
pub enum OnFlyOutcome {
    Routed(RouteTrace),
    NoReplacement,
}

/// Routes around `failed` using precomputed tables: notification climbs to
/// `s` (at most `h_st` rounds), then the message follows the pointers.
pub fn route_failover(
    g: &Graph,
    p: &PathSpec,
    next: Arc<Vec<Vec<Option<usize>>>>,
    failed: (usize, usize),
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<OnFlyOutcome, AlgoError> {
    let j = p
        .edge_index(failed.0, failed.1)
        .ok_or_else(|| AlgoError::InvalidInput(format!("{failed:?} is not an input-path edge")))?;
    if next[p.s][j].is_none() {
        return Ok(OnFlyOutcome::NoReplacement);
    }
    let prog = FailoverProgram {
        path: Arc::new(p.clone()),
        j: j as u64,
        next,
        hop_budget: 2 * g.n() as u64,
    };
    let run = crate::sim::run_program(g, &prog, &cfg.with_salt(96), super::tables::route_dims(g))?;
    log.push(
        &format!("route-failover(edge {j})"),
        Subroutine::Other,
        run.report.clone(),
    );
    let (vertices, weight) = assemble_trace(g, p.s, &run.outputs, p.t)?;
    Ok(OnFlyOutcome::Routed(RouteTrace {
        context: format!("fail({},{})", failed.0, failed.1),
        vertices,
        rounds: run.report.rounds,
        weight,
        storage_audit: None,
    }))
}

/// On-the-fly undirected construction. Persistent state outside `s` is the
/// two tree parents plus a scratch next pointer; `s` alone stores the
/// per-edge witnesses.
struct OnFlyProgram {
    path: Arc<PathSpec>,
    j: u64,
    /// At s only: (deviation u, type-2 partner or n).
    witness: (usize, usize),
    s_parent: Arc<Vec<Option<usize>>>,
    t_parent: Arc<Vec<Option<usize>>>,
}

#[derive(Debug, Default)]
struct OnFlyState {
    visits: TokenVisits,
    /// Scratch next pointer claimed during stage 2.
    next_hop: Option<usize>,
    claimed: bool,
}

impl NodeProgram for OnFlyProgram {
    type State = OnFlyState;
    type Output = TokenVisits;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> OnFlyState {
        if view.node == self.path.vertices[self.j as usize] {
            ctx.wake_at(1);
        }
        OnFlyState::default()
    }

    fn round(&self, state: &mut OnFlyState, ctx: &mut RoundCtx) -> bool {
        let me = ctx.view.node;
        let mut notified = me == self.path.vertices[self.j as usize] && ctx.round() == 1;
        let mut find: Option<u64> = None;
        let mut claim_from: Option<usize> = None;
        let mut token: Option<u64> = None;
        for (from, word) in ctx.inbox() {
            match word[0] {
                TAG_NOTIFY => notified = true,
                TAG_FIND => {
                    // Flood travels only down the s-tree.
                    if self.s_parent[me] == Some(*from) {
                        find = Some(word[1]);
                    }
                }
                TAG_CLAIM => claim_from = Some(*from),
                TAG_TOKEN => token = Some(word[2]),
                _ => unreachable!("unknown on-the-fly tag"),
            }
        }

        if notified {
            if me == self.path.s {
                // Stage 2: push the deviation vertex down the tree.
                let u = self.witness.0 as u64;
                if me == self.witness.0 {
                    state.claimed = true;
                    token = Some(0);
                } else {
                    for inc in &ctx.view.incidences {
                        ctx.send(inc.to, Word::new(&[TAG_FIND, u, 0]));
                    }
                }
            } else if let Some(pos) = self.path.position(me) {
                ctx.send(
                    self.path.vertices[pos - 1],
                    Word::new(&[TAG_NOTIFY, self.j, 0]),
                );
            }
        }

        if let Some(u) = find {
            if me == u as usize {
                // Stage 3: claim the tree path back to s.
                if let Some(p) = self.s_parent[me] {
                    ctx.send(p, Word::new(&[TAG_CLAIM, self.j, 0]));
                }
                state.claimed = true;
            } else {
                for inc in &ctx.view.incidences {
                    if self.s_parent[me] != Some(inc.to) {
                        ctx.send(inc.to, Word::new(&[TAG_FIND, u, 0]));
                    }
                }
            }
        }

        if let Some(child) = claim_from {
            state.next_hop = Some(child);
            if me == self.path.s {
                token = Some(0);
            } else if let Some(p) = self.s_parent[me] {
                ctx.send(p, Word::new(&[TAG_CLAIM, self.j, 0]));
            }
        }

        if let Some(hops) = token {
            // Stage 4: route s -> u via claimed pointers, then the type-2
            // edge if any, then the t-tree.
            let budget = 4 * ctx.view.n as u64;
            let nxt = if state.claimed && me == self.witness.0 {
                if self.witness.1 < ctx.view.n {
                    Some(self.witness.1)
                } else {
                    self.t_parent[me]
                }
            } else if state.next_hop.is_some() {
                state.next_hop
            } else {
                self.t_parent[me]
            };
            if me == self.path.t {
                state.visits.visits.push((ctx.round(), me));
                state.visits.done = true;
            } else if hops >= budget || nxt.is_none() {
                state.visits.visits.push((ctx.round(), me));
            } else {
                let nxt = nxt.unwrap();
                state.visits.visits.push((ctx.round(), nxt));
                ctx.send(nxt, Word::new(&[TAG_TOKEN, self.j, hops + 1]));
            }
        }
        true
    }

    fn finish(&self, _view: &LocalView, state: OnFlyState) -> TokenVisits {
        state.visits
    }
}

/// On-the-fly undirected routing around `failed`: witness data lives at `s`
/// only; measured rounds stay within `h_st + 3 h_rep`.
pub fn onfly_construct_undirected(
    g: &Graph,
    p: &PathSpec,
    witnesses: &[Option<(usize, usize)>],
    s_parent: Arc<Vec<Option<usize>>>,
    t_parent: Arc<Vec<Option<usize>>>,
    failed: (usize, usize),
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<OnFlyOutcome, AlgoError> {
    let j = p
        .edge_index(failed.0, failed.1)
        .or_else(|| p.edge_index(failed.1, failed.0))
        .ok_or_else(|| AlgoError::InvalidInput(format!("{failed:?} is not an input-path edge")))?;
    let Some(witness) = witnesses[j] else {
        return Ok(OnFlyOutcome::NoReplacement);
    };
    let prog = OnFlyProgram {
        path: Arc::new(p.clone()),
        j: j as u64,
        witness,
        s_parent,
        t_parent,
    };
    let run = crate::sim::run_program(g, &prog, &cfg.with_salt(97), super::tables::route_dims(g))?;
    log.push(
        &format!("onfly-route(edge {j})"),
        Subroutine::Other,
        run.report.clone(),
    );
    let (vertices, weight) = assemble_trace(g, p.s, &run.outputs, p.t)?;
    Ok(OnFlyOutcome::Routed(RouteTrace {
        context: format!("fail({},{})", failed.0, failed.1),
        vertices,
        rounds: run.report.rounds,
        weight,
        // Persistent per-node entries outside s: s-parent, t-parent, and the
        // scratch next pointer.
        storage_audit: Some(3),
    }))
}

/// Tiny flood used by on-demand cycle construction: `origin` pushes one
/// value to everyone.
pub(crate) fn flood_small(
    g: &Graph,
    origin: usize,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<(), SimError> {
    struct Flood {
        origin: usize,
    }
    impl NodeProgram for Flood {
        type State = bool;
        type Output = ();
        fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> bool {
            if view.node == self.origin {
                for inc in &view.incidences {
                    ctx.send(inc.to, Word::new(&[0]));
                }
                return true;
            }
            false
        }
        fn round(&self, seen: &mut bool, ctx: &mut RoundCtx) -> bool {
            if !ctx.inbox().is_empty() && !*seen {
                *seen = true;
                let from = ctx.inbox()[0].0;
                for inc in &ctx.view.incidences {
                    if inc.to != from {
                        ctx.send(inc.to, Word::new(&[0]));
                    }
                }
            }
            true
        }
        fn finish(&self, _v: &LocalView, _s: bool) {}
    }
    let run = crate::sim::run_program(g, &Flood { origin }, cfg, crate::primitives::dims_for(g))?;
    log.push("witness-flood", Subroutine::Other, run.report);
    Ok(())
}
