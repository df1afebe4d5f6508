//! Pipelined aggregation over a BFS tree.
//!
//! Words travel only on tree links, so their direction (from a child vs.
//! from the parent) already says whether they are convergecast or broadcast
//! traffic; no tag field is spent. An empty word marks the end of a stream.
//!
//! Two modes:
//!
//! * `MinPerKey`: every node holds one value per key in `0..key_count`
//!   (`missing_value` where it has none); per-key minima flow up the tree
//!   one key per round and the root's results flow back down, so `k` keys
//!   finish in `O(k + depth)` rounds. A two-field witness travels with each
//!   minimum.
//! * `Concat`: every node contributes arbitrary items, each forwarded up to
//!   the root once and re-broadcast down, `O(items + depth)` rounds in
//!   total. Only nodes with `retain_all` keep the full list.

use crate::graph::Graph;
use crate::sim::{
    InitCtx, LocalView, NodeProgram, PhaseLog, RoundCtx, SimConfig, SimError, Subroutine, Word,
};
use std::collections::VecDeque;
use std::sync::Arc;

use super::{dims_for, run_phase, BfsOutput};

/// Parent/children view of a rooted spanning tree.
#[derive(Debug, Clone)]
pub struct Tree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<u64>,
}

impl Tree {
    pub fn from_bfs(root: usize, bfs: &[BfsOutput]) -> Self {
        let parent: Vec<Option<usize>> = bfs.iter().map(|o| o.parent).collect();
        let mut children = vec![Vec::new(); bfs.len()];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(v);
            }
        }
        for c in children.iter_mut() {
            c.sort_unstable();
        }
        Tree {
            root,
            parent,
            children,
            depth: bfs.iter().map(|o| o.dist).collect(),
        }
    }
}

/// One aggregation item: a key, a value, and a two-field witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AggItem {
    pub key: u64,
    pub value: u64,
    pub aux: [u64; 2],
}

impl AggItem {
    pub fn new(key: u64, value: u64, aux: [u64; 2]) -> Self {
        AggItem { key, value, aux }
    }

    fn word(&self) -> Word {
        Word::new(&[self.key, self.value, self.aux[0], self.aux[1]])
    }

    fn from_word(w: &Word) -> Self {
        AggItem {
            key: w[0],
            value: w[1],
            aux: [w[2], w[3]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggMode {
    /// Keys `0..key_count`; minimum by `(value, aux)` wins per key.
    MinPerKey { key_count: u64 },
    /// Union of all contributed items.
    Concat,
}

#[derive(Debug, Clone)]
pub struct AggregateProgram {
    pub tree: Arc<Tree>,
    pub mode: AggMode,
    /// Per-node contributed items.
    pub items: Arc<Vec<Vec<AggItem>>>,
    /// Filler for keys a node has no item for; must fit in a word field
    /// (use the graph sentinel, never `u64::MAX`).
    pub missing_value: u64,
    /// Which nodes keep the full Concat stream (everyone still forwards).
    pub retain: Arc<Vec<bool>>,
}

#[derive(Debug)]
pub struct AggState {
    /// MinPerKey: best known per key.
    best: Vec<AggItem>,
    children_progress: Vec<u64>,
    next_up: u64,
    /// Concat queues.
    up_queue: VecDeque<AggItem>,
    down_queue: VecDeque<AggItem>,
    result: Vec<AggItem>,
    up_done_children: usize,
    up_done_sent: bool,
    recv_down_done: bool,
    sent_down_done: bool,
}

/// Per-node result: the aggregated items (all keys for MinPerKey; the full
/// union for retained nodes in Concat).
#[derive(Debug, Clone)]
pub struct AggOutput {
    pub items: Vec<AggItem>,
}

impl NodeProgram for AggregateProgram {
    type State = AggState;
    type Output = AggOutput;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> AggState {
        let me = view.node;
        let kc = match self.mode {
            AggMode::MinPerKey { key_count } => key_count,
            AggMode::Concat => 0,
        };
        let mut st = AggState {
            best: (0..kc)
                .map(|k| AggItem::new(k, self.missing_value, [0, 0]))
                .collect(),
            children_progress: vec![0; self.tree.children[me].len()],
            next_up: 0,
            up_queue: self.items[me].iter().copied().collect(),
            down_queue: VecDeque::new(),
            result: Vec::new(),
            up_done_children: 0,
            up_done_sent: false,
            recv_down_done: false,
            sent_down_done: false,
        };
        if matches!(self.mode, AggMode::MinPerKey { .. }) {
            for item in &self.items[me] {
                let slot = &mut st.best[item.key as usize];
                if (item.value, item.aux) < (slot.value, slot.aux) {
                    *slot = *item;
                }
            }
        }
        ctx.wake_at(1);
        st
    }

    fn round(&self, state: &mut AggState, ctx: &mut RoundCtx) -> bool {
        let me = ctx.view.node;
        let tree = &self.tree;
        let is_root = me == tree.root;
        let from_parent = |v: usize| tree.parent[me] == Some(v);

        for (from, word) in ctx.inbox() {
            let down = from_parent(*from);
            match (self.mode, down, word.is_empty()) {
                (AggMode::MinPerKey { .. }, false, false) => {
                    let item = AggItem::from_word(word);
                    let idx = tree.children[me].iter().position(|&c| c == *from).unwrap();
                    state.children_progress[idx] = item.key + 1;
                    let slot = &mut state.best[item.key as usize];
                    if (item.value, item.aux) < (slot.value, slot.aux) {
                        *slot = item;
                    }
                }
                (AggMode::MinPerKey { .. }, true, false) => {
                    let item = AggItem::from_word(word);
                    state.best[item.key as usize] = item;
                    state.result.push(item);
                    for &c in &tree.children[me] {
                        ctx.send(c, item.word());
                    }
                }
                (AggMode::Concat, false, true) => state.up_done_children += 1,
                (AggMode::Concat, false, false) => {
                    state.up_queue.push_back(AggItem::from_word(word));
                }
                (AggMode::Concat, true, true) => state.recv_down_done = true,
                (AggMode::Concat, true, false) => {
                    let item = AggItem::from_word(word);
                    if self.retain[me] {
                        state.result.push(item);
                    }
                    state.down_queue.push_back(item);
                }
                _ => unreachable!("tree aggregation word from a non-tree link"),
            }
        }

        match self.mode {
            AggMode::MinPerKey { key_count } => {
                if state.next_up < key_count {
                    let k = state.next_up;
                    if state.children_progress.iter().all(|&p| p > k) {
                        state.next_up += 1;
                        let item = state.best[k as usize];
                        if is_root {
                            state.result.push(item);
                            for &c in &tree.children[me] {
                                ctx.send(c, item.word());
                            }
                        } else {
                            ctx.send(tree.parent[me].unwrap(), item.word());
                        }
                    }
                    if state.next_up < key_count {
                        ctx.wake_at(ctx.round() + 1);
                    }
                }
                state.next_up >= key_count
            }
            AggMode::Concat => {
                if is_root {
                    while let Some(item) = state.up_queue.pop_front() {
                        if self.retain[me] {
                            state.result.push(item);
                        }
                        state.down_queue.push_back(item);
                    }
                    if state.up_done_children == tree.children[me].len()
                        && !state.up_done_sent
                        && state.up_queue.is_empty()
                    {
                        state.up_done_sent = true;
                        state.recv_down_done = true;
                    }
                } else if let Some(item) = state.up_queue.pop_front() {
                    ctx.send(tree.parent[me].unwrap(), item.word());
                } else if state.up_done_children == tree.children[me].len() && !state.up_done_sent
                {
                    state.up_done_sent = true;
                    ctx.send(tree.parent[me].unwrap(), Word::new(&[]));
                }

                if let Some(item) = state.down_queue.pop_front() {
                    for &c in &tree.children[me] {
                        ctx.send(c, item.word());
                    }
                } else if state.recv_down_done && !state.sent_down_done {
                    state.sent_down_done = true;
                    for &c in &tree.children[me] {
                        ctx.send(c, Word::new(&[]));
                    }
                }

                let busy = !state.up_queue.is_empty()
                    || !state.down_queue.is_empty()
                    || !state.up_done_sent
                    || (state.recv_down_done && !state.sent_down_done);
                if busy {
                    ctx.wake_at(ctx.round() + 1);
                }
                !busy
            }
        }
    }

    fn finish(&self, _view: &LocalView, mut state: AggState) -> AggOutput {
        if matches!(self.mode, AggMode::MinPerKey { .. }) {
            state.result = state.best;
        }
        state.result.sort_unstable();
        AggOutput {
            items: state.result,
        }
    }
}

/// Aggregates per-node items over the tree; in `MinPerKey` mode every node
/// ends up holding the per-key minima, in `Concat` mode every retained node
/// holds the full union.
pub fn broadcast_aggregate(
    g: &Graph,
    tree: Arc<Tree>,
    mode: AggMode,
    items: Vec<Vec<AggItem>>,
    retain_all: bool,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<Vec<AggOutput>, SimError> {
    let retain = Arc::new(vec![retain_all; g.n()]);
    broadcast_aggregate_retaining(g, tree, mode, items, retain, cfg, log)
}

/// As [`broadcast_aggregate`], retaining the Concat stream only at selected
/// nodes (memory, not protocol, differs).
pub fn broadcast_aggregate_retaining(
    g: &Graph,
    tree: Arc<Tree>,
    mode: AggMode,
    items: Vec<Vec<AggItem>>,
    retain: Arc<Vec<bool>>,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<Vec<AggOutput>, SimError> {
    broadcast_aggregate_with_dims(g, tree, mode, items, retain, dims_for(g), cfg, log)
}

/// Retaining variant with explicit word dimensions, for aggregations whose
/// payloads belong to an enlarged or scaled instance.
#[allow(clippy::too_many_arguments)]
pub fn broadcast_aggregate_with_dims(
    g: &Graph,
    tree: Arc<Tree>,
    mode: AggMode,
    items: Vec<Vec<AggItem>>,
    retain: Arc<Vec<bool>>,
    dims: crate::sim::WordDims,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<Vec<AggOutput>, SimError> {
    let prog = AggregateProgram {
        tree,
        mode,
        items: Arc::new(items),
        missing_value: g.sentinel(),
        retain,
    };
    run_phase(g, &prog, cfg, dims, log, "tree-aggregate", Subroutine::Other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_graph, Graph};
    use crate::primitives::bfs_tree;
    use crate::sim::PhaseLog;

    fn tree_for(g: &Graph, root: usize, cfg: &SimConfig) -> Arc<Tree> {
        let mut log = PhaseLog::new();
        let bfs = bfs_tree(g, root, false, cfg, &mut log).unwrap();
        Arc::new(Tree::from_bfs(root, &bfs))
    }

    #[test]
    fn single_key_min_reaches_everyone() {
        let g = random_graph(24, 0.15, false, false, 1, 3).unwrap();
        let cfg = SimConfig::new(3);
        let tree = tree_for(&g, 0, &cfg);
        let items: Vec<Vec<AggItem>> = (0..g.n())
            .map(|v| vec![AggItem::new(0, (g.n() - v) as u64, [v as u64, 0])])
            .collect();
        let mut log = PhaseLog::new();
        let out = broadcast_aggregate(
            &g,
            tree,
            AggMode::MinPerKey { key_count: 1 },
            items,
            true,
            &cfg,
            &mut log,
        )
        .unwrap();
        let expect = 1;
        for o in &out {
            assert_eq!(o.items.len(), 1);
            assert_eq!(o.items[0].value, expect);
            assert_eq!(o.items[0].aux[0], g.n() as u64 - 1);
        }
    }

    #[test]
    fn per_key_minima_match_sequential_min() {
        let g = random_graph(30, 0.12, false, false, 1, 8).unwrap();
        let cfg = SimConfig::new(8);
        let tree = tree_for(&g, 2, &cfg);
        let k = 9u64;
        let items: Vec<Vec<AggItem>> = (0..g.n())
            .map(|v| {
                (0..k)
                    .map(|key| AggItem::new(key, ((v as u64) * 7 + key * 13) % 29, [v as u64, 0]))
                    .collect()
            })
            .collect();
        let mut want = vec![u64::MAX; k as usize];
        for v in 0..g.n() {
            for key in 0..k {
                want[key as usize] = want[key as usize].min(((v as u64) * 7 + key * 13) % 29);
            }
        }
        let mut log = PhaseLog::new();
        let out = broadcast_aggregate(
            &g,
            tree,
            AggMode::MinPerKey { key_count: k },
            items,
            true,
            &cfg,
            &mut log,
        )
        .unwrap();
        for o in &out {
            let got: Vec<u64> = o.items.iter().map(|i| i.value).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn pipeline_rounds_bounded_on_path_graph() {
        // Path of 12, root at one end: depth 11, k keys => <= k + 2*depth + c.
        let g = Graph::new(12, false, false, (0..11).map(|i| (i, i + 1, 1)).collect()).unwrap();
        let cfg = SimConfig::new(0);
        let tree = tree_for(&g, 0, &cfg);
        let k = 7u64;
        let items: Vec<Vec<AggItem>> = (0..g.n())
            .map(|v| (0..k).map(|key| AggItem::new(key, v as u64 + key, [0, 0])).collect())
            .collect();
        let mut log = PhaseLog::new();
        broadcast_aggregate(&g, tree, AggMode::MinPerKey { key_count: k }, items, false, &cfg, &mut log)
            .unwrap();
        assert!(
            log.rounds() <= k + 2 * 11 + 4,
            "rounds {} exceed pipeline bound",
            log.rounds()
        );
    }

    #[test]
    fn concat_gathers_everything_everywhere() {
        let g = random_graph(20, 0.2, false, false, 1, 5).unwrap();
        let cfg = SimConfig::new(5);
        let tree = tree_for(&g, 4, &cfg);
        let items: Vec<Vec<AggItem>> = (0..g.n())
            .map(|v| {
                if v % 3 == 0 {
                    vec![AggItem::new(v as u64, v as u64 * 2, [1, 0])]
                } else {
                    vec![]
                }
            })
            .collect();
        let mut want: Vec<AggItem> = items.iter().flatten().copied().collect();
        want.sort_unstable();
        let mut log = PhaseLog::new();
        let out =
            broadcast_aggregate(&g, tree, AggMode::Concat, items, true, &cfg, &mut log).unwrap();
        for o in &out {
            assert_eq!(o.items, want);
        }
    }
}
