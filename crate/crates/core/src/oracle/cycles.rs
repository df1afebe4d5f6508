//! Minimum-weight-cycle, all-nodes-shortest-cycle, and girth ground truth.

use super::{dijkstra, Forbidden};
use crate::graph::{Graph, Weight};
use std::collections::VecDeque;

/// Exact minimum cycle weight through each vertex (sentinel when the vertex
/// lies on no cycle).
///
/// Directed: `ansc[x] = min over incoming edges (u, x) of delta(x, u) + w(u, x)`;
/// the shortest `x -> u` path plus the closing edge is always a simple cycle.
/// Undirected: `ansc[x] = min over incident edges (x, y) of
/// w(x, y) + delta_{G - (x, y)}(y, x)`.
pub fn oracle_ansc(g: &Graph) -> Vec<Weight> {
    let sent = g.sentinel();
    let mut ansc = vec![sent; g.n()];
    if g.directed() {
        for x in 0..g.n() {
            let (dist, _) = dijkstra(g, x, &Forbidden::none());
            for &(u, w) in g.in_edges(x) {
                if dist[u] < sent {
                    ansc[x] = ansc[x].min(dist[u] + w);
                }
            }
        }
    } else {
        for x in 0..g.n() {
            for &(y, w) in g.out_edges(x) {
                let (dist, _) = dijkstra(g, y, &Forbidden::single(x, y));
                if dist[x] < sent {
                    ansc[x] = ansc[x].min(w + dist[x]);
                }
            }
        }
    }
    ansc
}

/// Exact minimum weight cycle (sentinel when acyclic).
pub fn oracle_mwc(g: &Graph) -> Weight {
    oracle_ansc(g).into_iter().min().unwrap_or(g.sentinel())
}

/// Convenience pair `(mwc, ansc)`.
pub fn oracle_mwc_ansc(g: &Graph) -> (Weight, Vec<Weight>) {
    let ansc = oracle_ansc(g);
    let mwc = ansc.iter().copied().min().unwrap_or(g.sentinel());
    (mwc, ansc)
}

/// Exact girth of an undirected unweighted graph via BFS closure: for every
/// root, any non-tree edge `(x, y)` closes a cycle of length at most
/// `d(x) + d(y) + 1`, and the minimum over all roots and edges is exact.
/// Sentinel for forests.
pub fn oracle_girth(g: &Graph) -> Weight {
    assert!(!g.directed() && !g.weighted(), "girth is for undirected unweighted graphs");
    let sent = g.sentinel();
    let mut best = sent;
    for root in 0..g.n() {
        let mut dist = vec![usize::MAX; g.n()];
        let mut parent = vec![usize::MAX; g.n()];
        let mut q = VecDeque::new();
        dist[root] = 0;
        q.push_back(root);
        while let Some(u) = q.pop_front() {
            for &(v, _) in g.out_edges(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    q.push_back(v);
                } else if parent[u] != v && parent[v] != u {
                    let cand = (dist[u] + dist[v] + 1) as Weight;
                    best = best.min(cand);
                }
            }
        }
    }
    best
}

/// Exhaustive minimum simple cycle weight by DFS enumeration; only sensible
/// for tiny graphs (n <= 10 or so). Cross-checks the other oracles.
pub fn enumerate_min_cycle(g: &Graph) -> Weight {
    let sent = g.sentinel();
    let mut best = sent;
    let mut stack: Vec<usize> = Vec::new();
    let mut on_stack = vec![false; g.n()];

    fn dfs(
        g: &Graph,
        start: usize,
        cur: usize,
        acc: Weight,
        stack: &mut Vec<usize>,
        on_stack: &mut Vec<bool>,
        best: &mut Weight,
    ) {
        for &(v, w) in g.out_edges(cur) {
            if !g.directed() && stack.len() >= 2 && stack[stack.len() - 2] == v {
                continue; // would immediately re-traverse the same edge
            }
            if v == start {
                // Undirected: a cycle needs at least 3 vertices.
                if g.directed() || stack.len() >= 3 {
                    *best = (*best).min(acc + w);
                }
            } else if v > start && !on_stack[v] && acc + w < *best {
                stack.push(v);
                on_stack[v] = true;
                dfs(g, start, v, acc + w, stack, on_stack, best);
                on_stack[v] = false;
                stack.pop();
            }
        }
    }

    for start in 0..g.n() {
        stack.push(start);
        on_stack[start] = true;
        dfs(g, start, start, 0, &mut stack, &mut on_stack, &mut best);
        on_stack[start] = false;
        stack.pop();
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;

    #[test]
    fn k4_unit_all_ansc_three() {
        let g = random_graph(4, 1.0, false, false, 1, 0).unwrap();
        assert_eq!(oracle_ansc(&g), vec![3, 3, 3, 3]);
        assert_eq!(oracle_mwc(&g), 3);
    }

    #[test]
    fn dag_is_all_sentinel() {
        let g = Graph::new(4, true, false, vec![(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
            .unwrap();
        let (mwc, ansc) = oracle_mwc_ansc(&g);
        assert_eq!(mwc, g.sentinel());
        assert!(ansc.iter().all(|&w| w == g.sentinel()));
    }

    #[test]
    fn directed_triangle_mwc() {
        let g = Graph::new(3, true, true, vec![(0, 1, 1), (1, 2, 2), (2, 0, 3)]).unwrap();
        assert_eq!(oracle_mwc(&g), 6);
        assert_eq!(oracle_ansc(&g), vec![6, 6, 6]);
    }

    #[test]
    fn girth_of_tree_is_sentinel_and_c7_is_7() {
        let tree = Graph::new(5, false, false, vec![(0, 1, 1), (0, 2, 1), (1, 3, 1), (1, 4, 1)])
            .unwrap();
        assert_eq!(oracle_girth(&tree), tree.sentinel());
        let c7 = Graph::new(
            7,
            false,
            false,
            (0..7).map(|i| (i, (i + 1) % 7, 1)).collect(),
        )
        .unwrap();
        assert_eq!(oracle_girth(&c7), 7);
    }

    #[test]
    fn oracles_match_enumeration_on_small_graphs() {
        for seed in 0..40 {
            for directed in [false, true] {
                let Ok(g) = random_graph(8, 0.3, true, directed, 12, seed) else {
                    continue;
                };
                assert_eq!(oracle_mwc(&g), enumerate_min_cycle(&g), "seed {seed} dir {directed}");
            }
        }
    }

    #[test]
    fn girth_matches_enumeration_on_small_graphs() {
        for seed in 0..40 {
            let Ok(g) = random_graph(10, 0.25, false, false, 1, seed) else {
                continue;
            };
            assert_eq!(oracle_girth(&g), enumerate_min_cycle(&g), "seed {seed}");
        }
    }
}
