//! Single-root BFS tree on the underlying undirected graph.
//!
//! Plain mode finishes in `ecc(root) + 1` rounds. With `measure_ecc` the
//! program additionally counts children, convergecasts the maximum depth to
//! the root, and broadcasts it, so every node learns the root's eccentricity
//! (the crate's running estimate of the diameter `D`).

use crate::graph::Graph;
use crate::sim::{
    InitCtx, LocalView, NodeProgram, PhaseLog, RoundCtx, SimConfig, SimError, Subroutine, Word,
};

use super::{dims_for, run_phase};

const TAG_DIST: u64 = 0;
const TAG_CHILD: u64 = 1;
const TAG_UP_MAX: u64 = 2;
const TAG_ECC: u64 = 3;

#[derive(Debug, Clone)]
pub struct BfsTreeProgram {
    pub root: usize,
    pub measure_ecc: bool,
}

#[derive(Debug, Clone)]
pub struct BfsState {
    dist: Option<u64>,
    parent: Option<usize>,
    children: Vec<usize>,
    /// Rounds at which the child set is final (dist + 2).
    children_final_at: Option<u64>,
    pending_children: usize,
    subtree_max: u64,
    reported_up: bool,
    ecc: Option<u64>,
}

/// Per-node result: hop distance from the root, BFS parent, child list, and
/// (in `measure_ecc` mode) the root eccentricity.
#[derive(Debug, Clone)]
pub struct BfsOutput {
    pub dist: u64,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub ecc: Option<u64>,
}

impl NodeProgram for BfsTreeProgram {
    type State = BfsState;
    type Output = BfsOutput;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> BfsState {
        let is_root = view.node == self.root;
        if is_root {
            for inc in &view.incidences {
                ctx.send(inc.to, Word::new(&[TAG_DIST, 0]));
            }
            if self.measure_ecc {
                // Child marks from depth-1 nodes arrive at round 2.
                ctx.wake_at(2);
            }
        }
        BfsState {
            dist: is_root.then_some(0),
            parent: None,
            children: Vec::new(),
            children_final_at: is_root.then_some(2),
            pending_children: 0,
            subtree_max: 0,
            reported_up: false,
            ecc: None,
        }
    }

    fn round(&self, state: &mut BfsState, ctx: &mut RoundCtx) -> bool {
        let mut adopted = false;
        let mut notify_parent_done: Option<u64> = None;

        for (from, word) in ctx.inbox() {
            match word[0] {
                TAG_DIST => {
                    if state.dist.is_none() {
                        // First announcement wins; inbox is sender-sorted, so
                        // the smallest-id announcer becomes the parent.
                        state.dist = Some(word[1] + 1);
                        state.parent = Some(*from);
                        adopted = true;
                    }
                }
                TAG_CHILD => {
                    state.children.push(*from);
                    state.pending_children += 1;
                }
                TAG_UP_MAX => {
                    state.subtree_max = state.subtree_max.max(word[1]);
                    state.pending_children -= 1;
                }
                TAG_ECC => {
                    if state.ecc.is_none() {
                        state.ecc = Some(word[1]);
                        for inc in &ctx.view.incidences {
                            if Some(inc.to) != state.parent {
                                ctx.send(inc.to, Word::new(&[TAG_ECC, word[1]]));
                            }
                        }
                    }
                }
                _ => unreachable!("unknown bfs tag"),
            }
        }

        if adopted {
            let d = state.dist.unwrap();
            state.subtree_max = d;
            for inc in &ctx.view.incidences {
                if Some(inc.to) == state.parent {
                    if self.measure_ecc {
                        ctx.send(inc.to, Word::new(&[TAG_CHILD, 0]));
                    }
                } else {
                    ctx.send(inc.to, Word::new(&[TAG_DIST, d]));
                }
            }
            if self.measure_ecc {
                state.children_final_at = Some(ctx.round() + 2);
                ctx.wake_at(ctx.round() + 2);
            }
        }

        if self.measure_ecc && !state.reported_up {
            if let Some(final_at) = state.children_final_at {
                if ctx.round() >= final_at && state.pending_children == 0 {
                    state.reported_up = true;
                    if ctx.view.node == self.root {
                        let ecc = state.subtree_max;
                        state.ecc = Some(ecc);
                        for inc in &ctx.view.incidences {
                            ctx.send(inc.to, Word::new(&[TAG_ECC, ecc]));
                        }
                    } else {
                        notify_parent_done = Some(state.subtree_max);
                    }
                }
            }
        }
        if let Some(maxd) = notify_parent_done {
            ctx.send(state.parent.unwrap(), Word::new(&[TAG_UP_MAX, maxd]));
        }

        // Still waiting on children reports: stay alive.
        !(self.measure_ecc && !state.reported_up)
    }

    fn finish(&self, _view: &LocalView, state: BfsState) -> BfsOutput {
        BfsOutput {
            dist: state.dist.expect("connected graph reaches every node"),
            parent: state.parent,
            children: state.children,
            ecc: state.ecc,
        }
    }
}

/// Runs the BFS-tree program as a phase.
pub fn bfs_tree(
    g: &Graph,
    root: usize,
    measure_ecc: bool,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<Vec<BfsOutput>, SimError> {
    let out = run_phase(
        g,
        &BfsTreeProgram { root, measure_ecc },
        cfg,
        dims_for(g),
        log,
        if measure_ecc { "bfs-tree+ecc" } else { "bfs-tree" },
        Subroutine::Other,
    )?;
    if let Some(ecc) = out[root].ecc {
        log.note_diameter(ecc);
    }
    Ok(out)
}
