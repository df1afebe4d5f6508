//! All-pairs shortest paths with first-hop tracking.
//!
//! Unweighted graphs use the pipelined multi-source BFS (about `n + D`
//! rounds). Weighted graphs use per-source distributed Bellman-Ford with
//! sources staggered one round apart and per-link fair queuing: each link
//! direction carries at most one `(source, distance, first)` update per
//! round, smallest source first, and each node re-announces improvements
//! until global quiescence. Exactness comes from Bellman-Ford; no round
//! optimality is claimed for the weighted case.
//!
//! The weighted program runs on a *virtual topology*: a mapping of simulated
//! vertices onto network hosts in which every simulated edge is either
//! host-local or crosses a real link. The identity topology recovers plain
//! APSP; the replacement-path reduction supplies its enlarged graph the same
//! way.

use crate::graph::{Graph, Weight};
use crate::sim::{
    InitCtx, LocalView, NodeProgram, PhaseLog, RoundCtx, SimConfig, SimError, SimRun, Subroutine,
    Word, WordDims,
};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::multi_bfs::{CandidateRules, MultiSourceBfs};
use super::run_phase;


/// A graph of simulated vertices hosted on network nodes. Every arc either
/// connects two vertices on the same host or crosses a single network link.
#[derive(Debug, Clone)]
pub struct VirtualTopology {
    pub n_virt: usize,
    /// Host network node of each simulated vertex.
    pub host: Vec<usize>,
    /// Directed arcs `(from, to, weight)` between simulated vertices.
    pub arcs: Vec<(usize, usize, Weight)>,
    /// Largest arc weight (for word sizing).
    pub w_max: Weight,
}

impl VirtualTopology {
    /// Identity topology of a graph: every vertex hosts itself and arcs are
    /// the graph's directed edges (both orientations when undirected).
    pub fn identity(g: &Graph) -> Self {
        let mut arcs = Vec::with_capacity(2 * g.m());
        for &(u, v, w) in g.edges() {
            arcs.push((u, v, w));
            if !g.directed() {
                arcs.push((v, u, w));
            }
        }
        VirtualTopology {
            n_virt: g.n(),
            host: (0..g.n()).collect(),
            arcs,
            w_max: g.w_max().max(1),
        }
    }

    /// Arcs reversed (for routing-orientation passes).
    pub fn reversed(&self) -> Self {
        VirtualTopology {
            n_virt: self.n_virt,
            host: self.host.clone(),
            arcs: self.arcs.iter().map(|&(a, b, w)| (b, a, w)).collect(),
            w_max: self.w_max,
        }
    }

    pub fn sentinel(&self) -> Weight {
        self.n_virt as Weight * self.w_max + 1
    }

    fn validate(&self, g: &Graph) {
        for &(a, b, _) in &self.arcs {
            let (ha, hb) = (self.host[a], self.host[b]);
            assert!(
                ha == hb || g.link_neighbors(ha).contains(&hb),
                "arc ({a}, {b}) maps to no network link"
            );
        }
    }
}

/// Per-virtual-vertex APSP row.
#[derive(Debug, Clone)]
pub struct ApspOutput {
    /// Simulated vertices hosted here, with their rows.
    pub rows: Vec<(usize, ApspRow)>,
}

#[derive(Debug, Clone)]
pub struct ApspRow {
    /// `dist[u]` = shortest distance from `u` to this vertex.
    pub dist: Vec<Weight>,
    /// `first[u]` = first vertex after `u` on a witnessed shortest path from
    /// `u` to this vertex (`NO_VERT` when unreachable).
    pub first: Vec<u32>,
    /// A distinct alternative first hop at the same distance, when known
    /// (`NO_VERT` otherwise). Consumers testing first-hop disagreement need
    /// both.
    pub first_alt: Vec<u32>,
    /// `parent[u]` = the link the winning update arrived over: a neighbor of
    /// this vertex on a witnessed shortest path from `u` (undirected graphs:
    /// the next hop toward `u`).
    pub parent: Vec<u32>,
}

/// Marker for "no vertex" in the compact row arrays.
pub const NO_VERT: u32 = u32::MAX;

impl ApspRow {
    pub fn first_of(&self, u: usize) -> Option<usize> {
        (self.first[u] != NO_VERT).then_some(self.first[u] as usize)
    }

    pub fn parent_of(&self, u: usize) -> Option<usize> {
        (self.parent[u] != NO_VERT).then_some(self.parent[u] as usize)
    }
}

/// Assembled all-pairs table over simulated vertices: `delta(u, v)` with
/// `First(u, v)` known at `v`.
#[derive(Debug, Clone)]
pub struct ApspTable {
    pub n: usize,
    pub sentinel: Weight,
    rows: Vec<ApspRow>,
}

impl ApspTable {
    pub fn dist(&self, u: usize, v: usize) -> Weight {
        self.rows[v].dist[u]
    }

    pub fn first(&self, u: usize, v: usize) -> Option<usize> {
        self.rows[v].first_of(u)
    }

    pub fn parent_toward(&self, u: usize, v: usize) -> Option<usize> {
        self.rows[v].parent_of(u)
    }

    pub fn row(&self, v: usize) -> &ApspRow {
        &self.rows[v]
    }
}

#[derive(Debug, Clone)]
struct VirtApsp {
    topo: Arc<VirtualTopology>,
    /// Per network node: hosted virtual vertices (sorted).
    hosted: Arc<Vec<Vec<usize>>>,
    /// Per network node: host-local arcs (from, to, w).
    local_arcs: Arc<Vec<Vec<(usize, usize, Weight)>>>,
    /// Cross arcs indexed per (node, neighbor): tags assign word meanings.
    cross_out: Arc<Vec<BTreeMap<usize, Vec<(usize, usize, Weight)>>>>,
    sentinel: Weight,
}

#[derive(Debug)]
struct VirtState {
    /// dist[local_index][source] and first pointers.
    dist: Vec<Vec<Weight>>,
    first: Vec<Vec<u32>>,
    first2: Vec<Vec<u32>>,
    parent: Vec<Vec<u32>>,
    /// Pending fair-queue updates per neighbor:
    /// (source, local_from_index, first-slot).
    pending: Vec<BTreeSet<(u32, u32, u8)>>,
    started: bool,
}

const NO_VERT_LOCAL: u32 = u32::MAX;

impl VirtApsp {
    fn local_index(&self, node: usize, virt: usize) -> usize {
        self.hosted[node].binary_search(&virt).expect("hosted here")
    }

    /// Folds one relaxation candidate into (dist, first, first2) at a local
    /// vertex; returns which slots changed.
    #[allow(clippy::too_many_arguments)]
    fn fold(
        st: &mut VirtState,
        ib: usize,
        s: usize,
        nd: Weight,
        nf: u32,
        np: u32,
        dirty: &mut BTreeSet<(u32, u32, u8)>,
    ) -> bool {
        let (d, f, f2) = (st.dist[ib][s], st.first[ib][s], st.first2[ib][s]);
        if nd < d {
            st.dist[ib][s] = nd;
            st.first[ib][s] = nf;
            st.first2[ib][s] = NO_VERT_LOCAL;
            st.parent[ib][s] = np;
            dirty.insert((s as u32, ib as u32, 0));
            true
        } else if nd == d && nf != f {
            let mut changed = false;
            if nf < f {
                st.first[ib][s] = nf;
                st.parent[ib][s] = np;
                if f < st.first2[ib][s] {
                    st.first2[ib][s] = f;
                }
                dirty.insert((s as u32, ib as u32, 0));
                changed = true;
            } else if nf < f2 {
                st.first2[ib][s] = nf;
            }
            if st.first2[ib][s] != f2 {
                dirty.insert((s as u32, ib as u32, 1));
                changed = true;
            }
            changed
        } else {
            false
        }
    }

    /// Relaxes host-local arcs to a fixpoint, recording improved (source,
    /// vertex, slot) triples for announcement.
    fn relax_local(
        &self,
        node: usize,
        st: &mut VirtState,
        dirty: &mut BTreeSet<(u32, u32, u8)>,
    ) {
        // Local arcs are few; iterate to fixpoint.
        loop {
            let mut changed = false;
            for &(a, b, w) in &self.local_arcs[node] {
                let (ia, ib) = (self.local_index(node, a), self.local_index(node, b));
                for s in 0..self.topo.n_virt {
                    let da = st.dist[ia][s];
                    if da >= self.sentinel {
                        continue;
                    }
                    let nd = (da + w).min(self.sentinel);
                    for slot in 0..2u8 {
                        let f_src = if slot == 0 {
                            st.first[ia][s]
                        } else {
                            st.first2[ia][s]
                        };
                        if slot == 1 && f_src == NO_VERT_LOCAL {
                            continue;
                        }
                        let nf = if a == s { b as u32 } else { f_src };
                        if Self::fold(st, ib, s, nd, nf, a as u32, dirty) {
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn queue_dirty(&self, node: usize, st: &mut VirtState, dirty: BTreeSet<(u32, u32, u8)>) {
        for (s, i_local, slot) in dirty {
            if slot == 1 && st.first2[i_local as usize][s as usize] == NO_VERT_LOCAL {
                continue;
            }
            let from_virt = self.hosted[node][i_local as usize];
            for (nb_pos, (_nb, arcs)) in self.cross_out[node].iter().enumerate() {
                if arcs.iter().any(|&(a, _, _)| a == from_virt) {
                    st.pending[nb_pos].insert((s, i_local, slot));
                }
            }
        }
    }
}

impl NodeProgram for VirtApsp {
    type State = VirtState;
    type Output = ApspOutput;

    fn init(&self, view: &LocalView, ctx: &mut InitCtx) -> VirtState {
        let k = self.hosted[view.node].len();
        let nv = self.topo.n_virt;
        let mut st = VirtState {
            dist: vec![vec![self.sentinel; nv]; k],
            first: vec![vec![NO_VERT_LOCAL; nv]; k],
            first2: vec![vec![NO_VERT_LOCAL; nv]; k],
            parent: vec![vec![NO_VERT_LOCAL; nv]; k],
            pending: vec![BTreeSet::new(); self.cross_out[view.node].len()],
            started: false,
        };
        for (i, &v) in self.hosted[view.node].iter().enumerate() {
            st.dist[i][v] = 0;
        }
        // Staggered starts: the earliest hosted source decides the wake-up.
        if let Some(&v) = self.hosted[view.node].first() {
            ctx.wake_at(v as u64 + 1);
        }
        st
    }

    fn round(&self, st: &mut VirtState, ctx: &mut RoundCtx) -> bool {
        let node = ctx.view.node;
        let now = ctx.round();
        let mut dirty: BTreeSet<(u32, u32, u8)> = BTreeSet::new();

        // Source staggering: source v announces no earlier than round v + 1.
        if !st.started {
            st.started = true;
            let mut local_dirty: BTreeSet<(u32, u32, u8)> = BTreeSet::new();
            for (i, &v) in self.hosted[node].iter().enumerate() {
                local_dirty.insert((v as u32, i as u32, 0));
            }
            self.relax_local(node, st, &mut local_dirty);
            self.queue_dirty(node, st, local_dirty);
        }

        for (from, word) in ctx.inbox() {
            let arcs = &self.cross_out[*from][&node];
            let tag2 = word[0] as usize;
            let (a, b, w) = arcs[tag2 >> 1];
            let s = word[1] as usize;
            let d_from = word[2];
            let f_from = word[3];
            let ib = self.local_index(node, b);
            let nd = (d_from + w).min(self.sentinel);
            let nf = if a == s { b as u32 } else { f_from as u32 };
            Self::fold(st, ib, s, nd, nf, a as u32, &mut dirty);
        }

        if !dirty.is_empty() {
            self.relax_local(node, st, &mut dirty);
            self.queue_dirty(node, st, dirty);
        }

        // Fair queue: one update per link per round, smallest source first,
        // but not before the source's staggered start.
        let mut busy = false;
        for (nb_pos, (nb, arcs)) in self.cross_out[node].iter().enumerate() {
            let mut chosen: Option<(u32, u32, u8)> = None;
            for &(s, i_local, slot) in st.pending[nb_pos].iter() {
                if (s as u64) + 1 <= now {
                    chosen = Some((s, i_local, slot));
                    break;
                }
            }
            match chosen {
                Some((s, i_local, slot)) => {
                    st.pending[nb_pos].remove(&(s, i_local, slot));
                    let from_virt = self.hosted[node][i_local as usize];
                    // One word serves one arc; the low tag bit says which
                    // first-hop slot rides along (parallel arcs from the
                    // same virtual vertex cannot occur).
                    let tag = arcs
                        .iter()
                        .position(|&(a, _, _)| a == from_virt)
                        .expect("queued toward an arc");
                    let f = if slot == 0 {
                        st.first[i_local as usize][s as usize]
                    } else {
                        st.first2[i_local as usize][s as usize]
                    };
                    if slot == 1 && f == NO_VERT_LOCAL {
                        // Withdrawn since queuing.
                        if !st.pending[nb_pos].is_empty() {
                            busy = true;
                        }
                        continue;
                    }
                    let word = Word::new(&[
                        (tag * 2 + slot as usize) as u64,
                        s as u64,
                        st.dist[i_local as usize][s as usize],
                        if f == NO_VERT_LOCAL { 0 } else { f as u64 },
                    ]);
                    ctx.send(*nb, word);
                    if !st.pending[nb_pos].is_empty() {
                        busy = true;
                    }
                }
                None => {
                    if !st.pending[nb_pos].is_empty() {
                        busy = true;
                    }
                }
            }
        }
        if busy {
            ctx.wake_at(now + 1);
        }
        !busy
    }

    fn finish(&self, view: &LocalView, st: VirtState) -> ApspOutput {
        let rows = self.hosted[view.node]
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let row = ApspRow {
                    dist: st.dist[i].clone(),
                    first: st.first[i].clone(),
                    first_alt: st.first2[i].clone(),
                    parent: st.parent[i].clone(),
                };
                (v, row)
            })
            .collect();
        ApspOutput { rows }
    }
}

fn assemble(n_virt: usize, sentinel: Weight, outputs: Vec<ApspOutput>) -> ApspTable {
    let mut rows: Vec<Option<ApspRow>> = vec![None; n_virt];
    for out in outputs {
        for (v, row) in out.rows {
            rows[v] = Some(row);
        }
    }
    ApspTable {
        n: n_virt,
        sentinel,
        rows: rows.into_iter().map(|r| r.expect("every vertex hosted")).collect(),
    }
}

/// Weighted APSP over a virtual topology simulated on `g`.
pub fn apsp_virtual(
    g: &Graph,
    topo: Arc<VirtualTopology>,
    cfg: &SimConfig,
    log: &mut PhaseLog,
    label: &str,
) -> Result<ApspTable, SimError> {
    topo.validate(g);
    let mut hosted = vec![Vec::new(); g.n()];
    for (v, &h) in topo.host.iter().enumerate() {
        hosted[h].push(v);
    }
    for h in hosted.iter_mut() {
        h.sort_unstable();
    }
    let mut local_arcs = vec![Vec::new(); g.n()];
    let mut cross_out: Vec<BTreeMap<usize, Vec<(usize, usize, Weight)>>> =
        vec![BTreeMap::new(); g.n()];
    for &(a, b, w) in &topo.arcs {
        let (ha, hb) = (topo.host[a], topo.host[b]);
        if ha == hb {
            local_arcs[ha].push((a, b, w));
        } else {
            cross_out[ha].entry(hb).or_default().push((a, b, w));
        }
    }
    for m in cross_out.iter_mut() {
        for arcs in m.values_mut() {
            arcs.sort_unstable();
        }
    }
    let prog = VirtApsp {
        sentinel: topo.sentinel(),
        hosted: Arc::new(hosted),
        local_arcs: Arc::new(local_arcs),
        cross_out: Arc::new(cross_out),
        topo: topo.clone(),
    };
    // Word fields must carry virtual ids and virtual distances.
    let dims = WordDims::new(topo.n_virt, topo.w_max);
    let SimRun { report, outputs } =
        crate::sim::run_program(g, &prog, cfg, dims)?;
    log.push(label, Subroutine::Apsp, report);
    Ok(assemble(topo.n_virt, topo.sentinel(), outputs))
}

/// APSP on the graph itself: pipelined multi-source BFS when unweighted,
/// staggered fair-queued Bellman-Ford when weighted. Set `reversed` for the
/// routing orientation (each node then knows distances/next hops *to* every
/// target instead of *from* every source).
pub fn apsp(
    g: &Graph,
    reversed: bool,
    cfg: &SimConfig,
    log: &mut PhaseLog,
) -> Result<ApspTable, SimError> {
    if g.weighted() {
        let topo = VirtualTopology::identity(g);
        let topo = if reversed { topo.reversed() } else { topo };
        return apsp_virtual(g, Arc::new(topo), cfg, log, "apsp-weighted");
    }
    // Unweighted: multi-source BFS from all vertices with first tracking.
    let prog = MultiSourceBfs {
        sources: Arc::new((0..g.n()).collect()),
        hop_limit: g.n() as u64,
        top_r: g.n(),
        respect_direction: g.directed(),
        reversed,
        forbidden: Arc::new(Vec::new()),
        undirected: !g.directed(),
        delayed: false,
        track_first: true,
        candidates: CandidateRules::None,
    };
    let outputs = run_phase(
        g,
        &prog,
        cfg,
        super::dims_for(g),
        log,
        "apsp-unweighted",
        Subroutine::Apsp,
    )?;
    let sent = g.sentinel();
    let rows = outputs
        .into_iter()
        .map(|o| {
            let mut dist = vec![sent; g.n()];
            let mut first = vec![NO_VERT; g.n()];
            let mut first_alt = vec![NO_VERT; g.n()];
            let mut parent = vec![NO_VERT; g.n()];
            for e in o.entries {
                dist[e.source] = e.dist;
                first[e.source] = e.first as u32;
                first_alt[e.source] = e.first2.map_or(NO_VERT, |f| f as u32);
                parent[e.source] = e.parent as u32;
            }
            ApspRow {
                dist,
                first,
                first_alt,
                parent,
            }
        })
        .collect();
    Ok(ApspTable {
        n: g.n(),
        sentinel: sent,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;
    use crate::oracle::{dijkstra, Forbidden};
    use crate::sim::PhaseLog;

    fn check_against_oracle(g: &Graph, table: &ApspTable) {
        for u in 0..g.n() {
            let (want, _) = dijkstra(g, u, &Forbidden::none());
            for v in 0..g.n() {
                assert_eq!(table.dist(u, v), want[v], "pair ({u}, {v})");
            }
        }
    }

    fn check_first_property(g: &Graph, table: &ApspTable) {
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u == v || table.dist(u, v) >= table.sentinel {
                    continue;
                }
                let f = table.first(u, v).expect("reachable pair has a first hop");
                let w = g.edge_weight(u, f).expect("first hop is an out-neighbor");
                assert_eq!(
                    table.dist(u, v),
                    w + table.dist(f, v),
                    "first-hop consistency ({u}, {v})"
                );
            }
        }
    }

    #[test]
    fn weighted_triangle_both_directions() {
        let g = Graph::new(3, true, true, vec![(0, 1, 2), (1, 2, 3), (2, 0, 4)]).unwrap();
        let mut log = PhaseLog::new();
        let t = apsp(&g, false, &SimConfig::new(0), &mut log).unwrap();
        assert_eq!(t.dist(0, 2), 5);
        assert_eq!(t.dist(2, 0), 4);
        check_first_property(&g, &t);
    }

    #[test]
    fn unreachable_pairs_are_sentinel() {
        let g = Graph::new(3, true, false, vec![(0, 1, 1), (0, 2, 1)]).unwrap();
        let mut log = PhaseLog::new();
        let t = apsp(&g, false, &SimConfig::new(0), &mut log).unwrap();
        assert_eq!(t.dist(1, 2), g.sentinel());
        assert_eq!(t.dist(1, 0), g.sentinel());
    }

    #[test]
    fn weighted_random_graphs_match_oracle_with_first_property() {
        for seed in 0..6 {
            for directed in [true, false] {
                let g = random_graph(22, 0.2, true, directed, 30, seed).unwrap();
                let mut log = PhaseLog::new();
                let t = apsp(&g, false, &SimConfig::new(seed), &mut log).unwrap();
                check_against_oracle(&g, &t);
                check_first_property(&g, &t);
            }
        }
    }

    #[test]
    fn unweighted_random_graphs_match_oracle() {
        for seed in 0..6 {
            for directed in [true, false] {
                let g = random_graph(24, 0.18, false, directed, 1, seed).unwrap();
                let mut log = PhaseLog::new();
                let t = apsp(&g, false, &SimConfig::new(seed), &mut log).unwrap();
                check_against_oracle(&g, &t);
                check_first_property(&g, &t);
            }
        }
    }

    #[test]
    fn reversed_table_gives_next_hops_toward_targets() {
        let g = random_graph(18, 0.25, true, true, 20, 3).unwrap();
        let mut log = PhaseLog::new();
        let t = apsp(&g, true, &SimConfig::new(3), &mut log).unwrap();
        // Row v of the reversed run holds dist(v -> target) keyed by target,
        // and parent is the next hop from v toward the target.
        for v in 0..g.n() {
            let (want, _) = dijkstra(&g, v, &Forbidden::none());
            for target in 0..g.n() {
                assert_eq!(t.dist(target, v), want[target], "({v} -> {target})");
            }
        }
        for v in 0..g.n() {
            for target in 0..g.n() {
                let d = t.dist(target, v);
                if v == target || d >= t.sentinel {
                    continue;
                }
                let next = t.parent_toward(target, v).unwrap();
                let w = g.edge_weight(v, next).expect("next hop along an out-edge");
                assert_eq!(d, w + t.dist(target, next), "({v} -> {target})");
            }
        }
    }
}
