//! Sequential reference implementations for every quantity the distributed
//! algorithms compute.
//!
//! These are deliberately independent of the simulator code paths: plain
//! Dijkstra/Bellman-Ford over the adjacency lists, remove-one-edge loops for
//! replacement paths and cycles, and exhaustive cycle enumeration for tiny
//! graphs. Tie-breaking matches the crate-wide rule (prefer the smaller
//! vertex id) so outputs are deterministic and comparable.

mod cycles;
mod rpaths;

pub use cycles::{enumerate_min_cycle, oracle_ansc, oracle_girth, oracle_mwc, oracle_mwc_ansc};
pub use rpaths::{oracle_replacement_weight, oracle_rpaths, oracle_sisp2};

use crate::graph::{Graph, PathSpec, Weight};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Edge filter for the "remove edge / forbid path edges" variants. Directed
/// pairs; for undirected graphs an edge is forbidden in both orientations.
#[derive(Debug, Clone, Default)]
pub struct Forbidden(pub Vec<(usize, usize)>);

impl Forbidden {
    pub fn none() -> Self {
        Forbidden(Vec::new())
    }

    pub fn single(u: usize, v: usize) -> Self {
        Forbidden(vec![(u, v)])
    }

    pub fn path(p: &PathSpec) -> Self {
        Forbidden(p.edge_set())
    }

    pub fn blocks(&self, g: &Graph, u: usize, v: usize) -> bool {
        self.0
            .iter()
            .any(|&(a, b)| (a == u && b == v) || (!g.directed() && a == v && b == u))
    }
}

/// Dijkstra from `source`, honoring edge directions, skipping forbidden
/// edges. Returns distances (sentinel when unreachable) and the predecessor
/// of each settled vertex; among equal-weight predecessors the smallest id
/// wins.
pub fn dijkstra(g: &Graph, source: usize, forbidden: &Forbidden) -> (Vec<Weight>, Vec<usize>) {
    let sent = g.sentinel();
    let mut dist = vec![sent; g.n()];
    let mut pred = vec![usize::MAX; g.n()];
    let mut heap: BinaryHeap<Reverse<(Weight, usize)>> = BinaryHeap::new();
    dist[source] = 0;
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in g.out_edges(u) {
            if forbidden.blocks(g, u, v) {
                continue;
            }
            let nd = d + w;
            if nd < dist[v] || (nd == dist[v] && u < pred[v]) {
                if nd < dist[v] {
                    heap.push(Reverse((nd, v)));
                }
                dist[v] = nd;
                pred[v] = u;
            }
        }
    }
    (dist, pred)
}

/// Dijkstra on the reversed graph: `dist[v]` is the weight of the shortest
/// path from `v` to `target`.
pub fn dijkstra_to(g: &Graph, target: usize, forbidden: &Forbidden) -> (Vec<Weight>, Vec<usize>) {
    if !g.directed() {
        return dijkstra(g, target, forbidden);
    }
    let rev = g.reversed();
    let rf = Forbidden(forbidden.0.iter().map(|&(u, v)| (v, u)).collect());
    dijkstra(&rev, target, &rf)
}

/// Bellman-Ford, used as an independent cross-check on Dijkstra.
pub fn bellman_ford(g: &Graph, source: usize, forbidden: &Forbidden) -> Vec<Weight> {
    let sent = g.sentinel();
    let mut dist = vec![sent; g.n()];
    dist[source] = 0;
    for _ in 0..g.n() {
        let mut changed = false;
        for u in 0..g.n() {
            if dist[u] >= sent {
                continue;
            }
            for &(v, w) in g.out_edges(u) {
                if forbidden.blocks(g, u, v) {
                    continue;
                }
                if dist[u] + w < dist[v] {
                    dist[v] = dist[u] + w;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Exact shortest weight and one shortest path from `s` to `t`, with ties
/// broken toward the lexicographically smallest next-hop id at every step.
/// The path is empty when `t` is unreachable (weight = sentinel).
pub fn shortest_path_oracle(g: &Graph, s: usize, t: usize) -> (Weight, Vec<usize>) {
    shortest_path_forbidden(g, s, t, &Forbidden::none())
}

/// As [`shortest_path_oracle`] but skipping forbidden edges.
pub fn shortest_path_forbidden(
    g: &Graph,
    s: usize,
    t: usize,
    forbidden: &Forbidden,
) -> (Weight, Vec<usize>) {
    let sent = g.sentinel();
    if s == t {
        return (0, vec![s]);
    }
    let (dist_s, _) = dijkstra(g, s, forbidden);
    if dist_s[t] >= sent {
        return (sent, Vec::new());
    }
    let (dist_t, _) = dijkstra_to(g, t, forbidden);
    let total = dist_s[t];
    // Walk forward, taking the smallest unvisited next id that stays on some
    // shortest path. Zero-weight edges can paint this greedy walk into a
    // corner; in that case fall back to the predecessor chain, which is
    // always a simple shortest path.
    let mut path = vec![s];
    let mut visited = vec![false; g.n()];
    visited[s] = true;
    let mut cur = s;
    let mut acc: Weight = 0;
    while cur != t {
        let mut next: Option<usize> = None;
        for &(v, w) in g.out_edges(cur) {
            if visited[v] || forbidden.blocks(g, cur, v) {
                continue;
            }
            if dist_t[v] < sent && acc + w + dist_t[v] == total {
                next = Some(v); // out_edges sorted by id: first hit is minimal
                break;
            }
        }
        match next {
            Some(v) => {
                acc += g.edge_weight(cur, v).unwrap();
                visited[v] = true;
                path.push(v);
                cur = v;
            }
            None => return (total, pred_walk(g, s, t, forbidden)),
        }
    }
    (total, path)
}

fn pred_walk(g: &Graph, s: usize, t: usize, forbidden: &Forbidden) -> Vec<usize> {
    let (_, pred) = dijkstra(g, s, forbidden);
    let mut path = vec![t];
    let mut cur = t;
    while cur != s {
        cur = pred[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;

    #[test]
    fn triangle_prefers_direct_edge_on_tie_free_instance() {
        let g = Graph::new(3, true, true, vec![(0, 1, 2), (1, 2, 3), (0, 2, 4)]).unwrap();
        let (w, path) = shortest_path_oracle(&g, 0, 2);
        assert_eq!(w, 4);
        assert_eq!(path, vec![0, 2]);
    }

    #[test]
    fn unreachable_pair_returns_sentinel() {
        let g = Graph::new(3, true, false, vec![(0, 1, 1), (2, 1, 1)]).unwrap();
        let (w, path) = shortest_path_oracle(&g, 0, 2);
        assert_eq!(w, g.sentinel());
        assert!(path.is_empty());
    }

    #[test]
    fn ties_break_toward_smallest_next_hop() {
        // Two shortest 0-3 paths: 0-1-3 and 0-2-3, both weight 2.
        let g = Graph::new(
            4,
            false,
            false,
            vec![(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)],
        )
        .unwrap();
        let (_, path) = shortest_path_oracle(&g, 0, 3);
        assert_eq!(path, vec![0, 1, 3]);
    }

    #[test]
    fn dijkstra_matches_bellman_ford_on_random_graphs() {
        for seed in 0..12 {
            let g = random_graph(28, 0.15, true, true, 40, seed).unwrap();
            for s in [0, 7, 13] {
                let (d, _) = dijkstra(&g, s, &Forbidden::none());
                let bf = bellman_ford(&g, s, &Forbidden::none());
                assert_eq!(d, bf, "seed {seed} source {s}");
            }
        }
    }

    #[test]
    fn triangle_inequality_over_sampled_triples() {
        let g = random_graph(24, 0.2, true, true, 30, 5).unwrap();
        let all: Vec<Vec<Weight>> = (0..g.n())
            .map(|s| dijkstra(&g, s, &Forbidden::none()).0)
            .collect();
        let sent = g.sentinel();
        for u in 0..g.n() {
            for w in 0..g.n() {
                for v in 0..g.n() {
                    if all[u][w] < sent && all[w][v] < sent {
                        assert!(all[u][v] <= all[u][w] + all[w][v]);
                    }
                }
            }
        }
    }
}
