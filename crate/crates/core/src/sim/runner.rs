//! Round loop, delivery queues, bandwidth enforcement, and virtual time.

use super::report::SimReport;
use super::rng::{node_rng, NodeRng};
use super::word::{Word, WordDims};
use super::{SimConfig, SimError};
use crate::graph::{Graph, Incidence, Weight};
use std::collections::BinaryHeap;

/// What a node knows at start-up: its id, the global parameters, and its
/// incident edges (with weights and orientation). Programs receive nothing
/// else about the topology.
#[derive(Debug, Clone)]
pub struct LocalView {
    pub node: usize,
    pub n: usize,
    pub w_max: Weight,
    pub sentinel: Weight,
    /// Incident communication links with direction flags, sorted by neighbor.
    pub incidences: Vec<Incidence>,
}

impl LocalView {
    pub fn degree(&self) -> usize {
        self.incidences.len()
    }

    pub fn neighbor_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.incidences.iter().map(|i| i.to)
    }
}

/// A distributed algorithm: per-node state plus handlers.
///
/// `init` runs once per node before round 1 and may already queue words.
/// `round` runs every executed round; it must be a pure function of the
/// state, the inbox, and the node's random stream, and it returns the node's
/// halt vote. A node with an empty inbox must not change state or send
/// unless it registered a wake-up (this is what lets virtual time skip idle
/// rounds without changing behavior). The run terminates when every node
/// votes halt and no words are queued or in flight; `finish` then converts
/// each final state into that node's output.
pub trait NodeProgram {
    type State;
    type Output;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> Self::State;
    fn round(&self, state: &mut Self::State, ctx: &mut RoundCtx) -> bool;
    fn finish(&self, view: &LocalView, state: Self::State) -> Self::Output;
}

/// Send buffer shared by init and round contexts.
#[derive(Default)]
struct SendBuf {
    /// (neighbor, word, delay, replace_ok)
    sends: Vec<(usize, Word, u64, bool)>,
    wake_at: Option<u64>,
}

/// Context available during `init` (round 0): queue words, request a wake-up.
pub struct InitCtx<'a> {
    pub rng: &'a mut NodeRng,
    buf: &'a mut SendBuf,
}

impl InitCtx<'_> {
    /// Queue a word for delivery in round 1.
    pub fn send(&mut self, neighbor: usize, word: Word) {
        self.buf.sends.push((neighbor, word, 1, false));
    }

    /// Ask for a `round` call at the given round even without incoming words.
    pub fn wake_at(&mut self, round: u64) {
        let r = round.max(1);
        self.buf.wake_at = Some(self.buf.wake_at.map_or(r, |w| w.min(r)));
    }
}

/// Context available during `round`.
pub struct RoundCtx<'a> {
    pub view: &'a LocalView,
    pub rng: &'a mut NodeRng,
    round: u64,
    inbox: &'a [(usize, Word)],
    buf: &'a mut SendBuf,
}

impl<'a> RoundCtx<'a> {
    pub fn round(&self) -> u64 {
        self.round
    }

    /// Words delivered this round, sorted by sender id.
    pub fn inbox(&self) -> &'a [(usize, Word)] {
        self.inbox
    }

    /// Send one word to a neighbor, arriving next round. Sending twice to the
    /// same neighbor in one round is a bandwidth violation.
    pub fn send(&mut self, neighbor: usize, word: Word) {
        self.buf.sends.push((neighbor, word, 1, false));
    }

    /// Send with an edge delay: the word arrives `delay` rounds later.
    /// `delay = 1` is a plain send; `delay = 0` traverses a zero-weight edge
    /// within the current round (still one word per direction per round).
    pub fn send_delayed(&mut self, neighbor: usize, word: Word, delay: u64) {
        self.buf.sends.push((neighbor, word, delay, false));
    }

    /// Like [`RoundCtx::send_delayed`], but an existing same-round pending
    /// word to the same neighbor is replaced instead of counting as a second
    /// word. Pending words only commit when the round ends, so revising one
    /// consumes no extra bandwidth.
    pub fn send_replacing(&mut self, neighbor: usize, word: Word, delay: u64) {
        self.buf.sends.push((neighbor, word, delay, true));
    }

    pub fn wake_at(&mut self, round: u64) {
        let r = round.max(self.round + 1);
        self.buf.wake_at = Some(self.buf.wake_at.map_or(r, |w| w.min(r)));
    }
}

/// Result of a run: the report plus every node's output.
#[derive(Debug, Clone)]
pub struct SimRun<O> {
    pub report: SimReport,
    pub outputs: Vec<O>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct InFlight {
    arrival: u64,
    seq: u64,
    from: usize,
    to: usize,
    word: Word,
}

impl Ord for InFlight {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap is a max-heap; reverse for earliest-first.
        (other.arrival, other.seq).cmp(&(self.arrival, self.seq))
    }
}

impl PartialOrd for InFlight {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct Exec<'a, P: NodeProgram> {
    prog: &'a P,
    cfg: &'a SimConfig,
    dims: WordDims,
    views: Vec<LocalView>,
    rngs: Vec<NodeRng>,
    states: Vec<Option<P::State>>,
    votes: Vec<bool>,
    report: SimReport,
    flight: BinaryHeap<InFlight>,
    seq: u64,
    wakeups: BinaryHeap<std::cmp::Reverse<(u64, usize)>>,
    /// Pending outgoing words for the current round: (neighbor, word, delay).
    slots: Vec<Vec<(usize, Word, u64)>>,
    /// Neighbors already given a zero-delay word this round.
    zero_sent: Vec<Vec<usize>>,
    /// Zero-delay words awaiting in-round delivery.
    zero_out: Vec<(usize, usize, Word)>,
    inboxes: Vec<Vec<(usize, Word)>>,
}

impl<'a, P: NodeProgram> Exec<'a, P> {
    /// Validates and stages everything `node` sent this round.
    fn stage(&mut self, node: usize, round: u64, buf: &mut SendBuf) -> Result<(), SimError> {
        if let Some(w) = buf.wake_at.take() {
            self.wakeups.push(std::cmp::Reverse((w, node)));
        }
        for (to, word, delay, replace) in buf.sends.drain(..) {
            if !self.views[node].incidences.iter().any(|i| i.to == to) {
                return Err(SimError::NotALink { node, neighbor: to });
            }
            if word.len() as u32 > self.cfg.c_w {
                return Err(SimError::WordTooWide {
                    node,
                    neighbor: to,
                    round,
                    fields: word.len(),
                    max_fields: self.cfg.c_w,
                    bits: word.len() as u32 * self.dims.unit_bits,
                    max_bits: self.cfg.c_w * self.dims.unit_bits,
                });
            }
            for &f in word.fields() {
                if f > self.dims.max_field {
                    return Err(SimError::FieldTooWide {
                        node,
                        round,
                        value: f,
                        unit_bits: self.dims.unit_bits,
                    });
                }
            }
            let zero_used = self.zero_sent[node].contains(&to);
            if delay == 0 {
                if zero_used || self.slots[node].iter().any(|(t, _, _)| *t == to) {
                    return Err(SimError::DoubleSend {
                        node,
                        neighbor: to,
                        round,
                    });
                }
                self.zero_sent[node].push(to);
                self.report.count_send();
                self.zero_out.push((node, to, word));
                continue;
            }
            if zero_used {
                return Err(SimError::DoubleSend {
                    node,
                    neighbor: to,
                    round,
                });
            }
            if let Some(slot) = self.slots[node].iter_mut().find(|(t, _, _)| *t == to) {
                if !replace {
                    return Err(SimError::DoubleSend {
                        node,
                        neighbor: to,
                        round,
                    });
                }
                slot.1 = word;
                slot.2 = delay;
            } else {
                self.slots[node].push((to, word, delay));
            }
        }
        Ok(())
    }

    /// Commits all pending slot words as in-flight deliveries.
    fn commit(&mut self, round: u64) {
        for v in 0..self.slots.len() {
            for (to, word, delay) in self.slots[v].drain(..) {
                self.report.count_send();
                self.seq += 1;
                self.flight.push(InFlight {
                    arrival: round + delay,
                    seq: self.seq,
                    from: v,
                    to,
                    word,
                });
            }
            self.zero_sent[v].clear();
        }
    }

    fn run_node(&mut self, v: usize, round: u64, buf: &mut SendBuf) -> Result<(), SimError> {
        self.inboxes[v].sort_by_key(|&(from, _)| from);
        let inbox = std::mem::take(&mut self.inboxes[v]);
        let mut state = self.states[v].take().unwrap();
        let vote = {
            let mut ctx = RoundCtx {
                view: &self.views[v],
                rng: &mut self.rngs[v],
                round,
                inbox: &inbox,
                buf,
            };
            self.prog.round(&mut state, &mut ctx)
        };
        self.states[v] = Some(state);
        self.votes[v] = vote;
        self.stage(v, round, buf)
    }
}

/// Runs `prog` on every node of `g` until unanimous halt with a quiet
/// network, or budget exhaustion. Word widths are checked against `dims`
/// (pass `WordDims::new(g.n(), g.w_max())` unless the program simulates an
/// enlarged graph).
pub fn run_program<P: NodeProgram>(
    g: &Graph,
    prog: &P,
    cfg: &SimConfig,
    dims: WordDims,
) -> Result<SimRun<P::Output>, SimError> {
    let n = g.n();
    let views: Vec<LocalView> = (0..n)
        .map(|v| LocalView {
            node: v,
            n,
            w_max: g.w_max(),
            sentinel: g.sentinel(),
            incidences: g.incidences(v),
        })
        .collect();
    let rngs: Vec<NodeRng> = (0..n).map(|v| node_rng(cfg.seed, cfg.salt, v)).collect();

    let mut ex = Exec {
        prog,
        cfg,
        dims,
        views,
        rngs,
        states: Vec::with_capacity(n),
        votes: vec![true; n],
        report: SimReport::new(cfg, dims),
        flight: BinaryHeap::new(),
        seq: 0,
        wakeups: BinaryHeap::new(),
        slots: vec![Vec::new(); n],
        zero_sent: vec![Vec::new(); n],
        zero_out: Vec::new(),
        inboxes: vec![Vec::new(); n],
    };

    // Init sweep (round 0).
    let mut buf = SendBuf::default();
    for v in 0..n {
        let state = {
            let mut ctx = InitCtx {
                rng: &mut ex.rngs[v],
                buf: &mut buf,
            };
            prog.init(&ex.views[v], &mut ctx)
        };
        ex.states.push(Some(state));
        ex.stage(v, 0, &mut buf)?;
    }
    ex.commit(0);

    let mut round: u64 = 0;
    loop {
        if ex.flight.is_empty() && ex.wakeups.is_empty() && ex.votes.iter().all(|&v| v) {
            ex.report.rounds = round;
            break;
        }

        let next_event = ex
            .flight
            .peek()
            .map(|f| f.arrival)
            .into_iter()
            .chain(ex.wakeups.peek().map(|w| w.0 .0))
            .min();
        round = match next_event {
            Some(e) if cfg.virtual_time => e.max(round + 1),
            _ => round + 1,
        };
        if round > cfg.max_rounds {
            return Err(SimError::BudgetExhausted {
                budget: cfg.max_rounds,
            });
        }

        while ex.flight.peek().is_some_and(|f| f.arrival <= round) {
            let f = ex.flight.pop().unwrap();
            ex.inboxes[f.to].push((f.from, f.word));
        }
        while ex.wakeups.peek().is_some_and(|w| w.0 .0 <= round) {
            ex.wakeups.pop();
        }

        // Main sweep: every node runs once per executed round.
        for v in 0..n {
            ex.run_node(v, round, &mut buf)?;
        }

        // Zero-delay sub-iterations: relaxation across zero-weight edges
        // settles within the round.
        let mut sub = 0usize;
        while !ex.zero_out.is_empty() {
            sub += 1;
            if sub > n + 2 {
                return Err(SimError::ZeroRelaxDiverged(sub));
            }
            let mut burst = std::mem::take(&mut ex.zero_out);
            burst.sort_by_key(|&(from, to, _)| (to, from));
            let mut touched: Vec<usize> = Vec::new();
            for (from, to, word) in burst {
                if touched.last() != Some(&to) {
                    touched.push(to);
                }
                ex.inboxes[to].push((from, word));
            }
            touched.dedup();
            for v in touched {
                ex.run_node(v, round, &mut buf)?;
            }
        }

        ex.commit(round);
    }

    let outputs = ex
        .states
        .into_iter()
        .enumerate()
        .map(|(v, s)| prog.finish(&ex.views[v], s.unwrap()))
        .collect();
    Ok(SimRun {
        report: ex.report,
        outputs,
    })
}
