//! Graph representation shared by the simulator, the distributed algorithms,
//! and the sequential oracles.
//!
//! Weights are non-negative integers bounded by `w_max`, and every graph
//! carries a `sentinel` value strictly greater than `n * w_max` that stands
//! in for an infinite/unreachable distance. All distance arithmetic in the
//! crate saturates at the sentinel.

mod gen;
mod io;
mod scale;

pub use gen::{layered_graph, random_graph, LayeredParams};
pub use io::{graph_to_string, load_graph, load_path, parse_graph, save_graph, save_path};
pub use scale::scale_weights;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer edge weight or path distance.
pub type Weight = u64;

/// Errors raised while constructing, loading, or validating graphs.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed edge line {line}: {msg}")]
    MalformedEdge { line: usize, msg: String },
    #[error("vertex id {id} out of range for n={n}")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("negative weight on line {line}")]
    NegativeWeight { line: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("weight {w} exceeds declared maximum {w_max}")]
    WeightTooLarge { w: Weight, w_max: Weight },
    #[error("unweighted graph has edge weight {0} != 1")]
    UnitWeightViolation(Weight),
    #[error("underlying undirected graph is disconnected")]
    Disconnected,
    #[error("connectivity not achieved within {0} retries")]
    ConnectivityRetries(usize),
    #[error("edge count mismatch: header says {header}, found {found}")]
    EdgeCountMismatch { header: usize, found: usize },
    #[error("weight scaling overflows the sentinel range")]
    ScaleOverflow,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid path spec: {0}")]
    InvalidPath(String),
}

/// The four graph classes the algorithms distinguish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphClass {
    DirectedWeighted,
    DirectedUnweighted,
    UndirectedWeighted,
    UndirectedUnweighted,
}

/// One communication link as seen from a vertex. Anti-parallel directed
/// edges share a link, so both orientations' weights are carried.
#[derive(Debug, Clone, Copy)]
pub struct Incidence {
    /// The other endpoint.
    pub to: usize,
    /// Weight of the edge oriented away from this vertex, if present.
    pub out_weight: Option<Weight>,
    /// Weight of the edge oriented toward this vertex, if present.
    pub in_weight: Option<Weight>,
}

impl Incidence {
    pub fn outgoing(&self) -> bool {
        self.out_weight.is_some()
    }

    pub fn incoming(&self) -> bool {
        self.in_weight.is_some()
    }
}

/// A directed or undirected graph with integer weights in `0..=w_max`.
///
/// Vertex ids are exactly `0..n`. Undirected edges are stored once with
/// `u < v`. The underlying undirected graph must be connected, matching the
/// assumption that the graph doubles as the communication network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    weighted: bool,
    w_max: Weight,
    edges: Vec<(usize, usize, Weight)>,
    /// Out-adjacency (directed) or full adjacency (undirected), sorted by head.
    out: Vec<Vec<(usize, Weight)>>,
    /// In-adjacency; equals `out` for undirected graphs.
    inn: Vec<Vec<(usize, Weight)>>,
    /// Underlying undirected communication links, sorted, deduplicated.
    links: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds and validates a graph from an edge list.
    pub fn new(
        n: usize,
        directed: bool,
        weighted: bool,
        mut edges: Vec<(usize, usize, Weight)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::MalformedHeader("n must be positive".into()));
        }
        let mut w_max: Weight = if weighted { 0 } else { 1 };
        for &(u, v, w) in &edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { id: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { id: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !weighted && w != 1 {
                return Err(GraphError::UnitWeightViolation(w));
            }
            w_max = w_max.max(w);
        }
        // Canonical order: undirected edges normalized to u < v, then sorted.
        if !directed {
            for e in edges.iter_mut() {
                if e.0 > e.1 {
                    std::mem::swap(&mut e.0, &mut e.1);
                }
            }
        }
        edges.sort_unstable();
        for pair in edges.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(GraphError::DuplicateEdge(pair[0].0, pair[0].1));
            }
        }

        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut links = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            out[u].push((v, w));
            inn[v].push((u, w));
            if !directed {
                out[v].push((u, w));
                inn[u].push((v, w));
            }
            links[u].push(v);
            links[v].push(u);
        }
        for l in links.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        for a in out.iter_mut().chain(inn.iter_mut()) {
            a.sort_unstable();
        }

        let g = Graph {
            n,
            directed,
            weighted,
            w_max,
            edges,
            out,
            inn,
            links,
        };
        if !g.underlying_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn weighted(&self) -> bool {
        self.weighted
    }

    /// Maximum edge weight W (1 for unweighted graphs).
    pub fn w_max(&self) -> Weight {
        self.w_max
    }

    pub fn class(&self) -> GraphClass {
        match (self.directed, self.weighted) {
            (true, true) => GraphClass::DirectedWeighted,
            (true, false) => GraphClass::DirectedUnweighted,
            (false, true) => GraphClass::UndirectedWeighted,
            (false, false) => GraphClass::UndirectedUnweighted,
        }
    }

    /// The infinity stand-in for this graph: `n * w_max + 1`, strictly larger
    /// than any finite path weight.
    pub fn sentinel(&self) -> Weight {
        self.n as Weight * self.w_max + 1
    }

    /// Canonical edge list, sorted by `(u, v)`; undirected edges have `u < v`.
    pub fn edges(&self) -> &[(usize, usize, Weight)] {
        &self.edges
    }

    /// Edges leaving `u` (all incident edges when undirected), sorted by head.
    pub fn out_edges(&self, u: usize) -> &[(usize, Weight)] {
        &self.out[u]
    }

    /// Edges entering `v` (all incident edges when undirected), sorted by tail.
    pub fn in_edges(&self, v: usize) -> &[(usize, Weight)] {
        &self.inn[v]
    }

    /// Neighbors of `u` in the underlying undirected communication graph.
    pub fn link_neighbors(&self, u: usize) -> &[usize] {
        &self.links[u]
    }

    /// Full incidence view of `u` (communication neighbors with per-direction
    /// weights).
    pub fn incidences(&self, u: usize) -> Vec<Incidence> {
        let mut inc: Vec<Incidence> = Vec::with_capacity(self.links[u].len());
        for &v in &self.links[u] {
            let out_weight = self.out[u]
                .iter()
                .find(|&&(x, _)| x == v)
                .map(|&(_, w)| w);
            let in_weight = self.inn[u]
                .iter()
                .find(|&&(x, _)| x == v)
                .map(|&(_, w)| w);
            inc.push(Incidence {
                to: v,
                out_weight,
                in_weight,
            });
        }
        inc
    }

    /// Weight of the directed edge `(u, v)` if present (an undirected edge
    /// counts in both directions).
    pub fn edge_weight(&self, u: usize, v: usize) -> Option<Weight> {
        self.out[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| self.out[u][i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_weight(u, v).is_some()
    }

    /// Checks connectivity of the underlying undirected graph.
    pub fn underlying_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.links[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Re-runs all structural invariants; used by tests and after transforms.
    pub fn validate(&self) -> Result<(), GraphError> {
        Graph::new(self.n, self.directed, self.weighted, self.edges.clone()).map(|_| ())
    }

    /// Same topology with every edge orientation reversed. Undirected graphs
    /// are returned unchanged.
    pub fn reversed(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let edges = self.edges.iter().map(|&(u, v, w)| (v, u, w)).collect();
        Graph::new(self.n, true, self.weighted, edges).expect("reversal preserves invariants")
    }

    /// Copy with a different edge set but the same flags; used by gadget
    /// builders and weight scaling.
    pub fn with_edges(&self, edges: Vec<(usize, usize, Weight)>) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.directed, true, edges)
    }
}

/// An input shortest path `P_st`: endpoints, the full vertex sequence, its
/// hop count and total weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSpec {
    pub s: usize,
    pub t: usize,
    pub vertices: Vec<usize>,
    pub h_st: usize,
    pub delta_st: Weight,
}

impl PathSpec {
    /// Builds a path spec from a vertex sequence, checking that consecutive
    /// vertices are joined by edges and that the path is a shortest `s`-`t`
    /// path (its weight matches the Dijkstra oracle).
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        if vertices.len() < 2 {
            return Err(GraphError::InvalidPath(
                "path needs at least two vertices".into(),
            ));
        }
        let mut delta: Weight = 0;
        for win in vertices.windows(2) {
            match g.edge_weight(win[0], win[1]) {
                Some(w) => delta += w,
                None => {
                    return Err(GraphError::InvalidPath(format!(
                        "no edge ({}, {})",
                        win[0], win[1]
                    )))
                }
            }
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(GraphError::InvalidPath("path revisits a vertex".into()));
        }
        let s = vertices[0];
        let t = *vertices.last().unwrap();
        let (best, _) = crate::oracle::shortest_path_oracle(g, s, t);
        if best != delta {
            return Err(GraphError::InvalidPath(format!(
                "path weight {delta} is not shortest ({best})"
            )));
        }
        Ok(PathSpec {
            s,
            t,
            h_st: vertices.len() - 1,
            delta_st: delta,
            vertices,
        })
    }

    /// Shortest path chosen by the oracle between `s` and `t`.
    pub fn from_endpoints(g: &Graph, s: usize, t: usize) -> Result<Self, GraphError> {
        let (w, path) = crate::oracle::shortest_path_oracle(g, s, t);
        if w >= g.sentinel() {
            return Err(GraphError::InvalidPath(format!("{t} unreachable from {s}")));
        }
        PathSpec::new(g, path)
    }

    /// Index of edge `(u, v)` on the path, if it is a path edge.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.vertices
            .windows(2)
            .position(|w| w[0] == u && w[1] == v)
    }

    /// The `j`-th path edge `(v_j, v_{j+1})`.
    pub fn edge(&self, j: usize) -> (usize, usize) {
        (self.vertices[j], self.vertices[j + 1])
    }

    /// Position of `v` on the path.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// Total weight of the path prefix `s..v_i` (prefix sums of `P_st`; exact
    /// shortest-path distances because the path itself is shortest).
    pub fn prefix_weights(&self, g: &Graph) -> Vec<Weight> {
        let mut acc = 0;
        let mut out = vec![0];
        for win in self.vertices.windows(2) {
            acc += g.edge_weight(win[0], win[1]).expect("validated path edge");
            out.push(acc);
        }
        out
    }

    /// Edge set of the path, as directed pairs.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        self.vertices.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// Saturating distance addition capped at `sentinel`.
pub fn sat_add(a: Weight, b: Weight, sentinel: Weight) -> Weight {
    let s = a.saturating_add(b);
    if s >= sentinel {
        sentinel
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, true, true, vec![(0, 1, 2), (1, 2, 3), (2, 0, 4)]).unwrap()
    }

    #[test]
    fn builds_and_validates_triangle() {
        let g = triangle();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.w_max(), 4);
        assert_eq!(g.sentinel(), 13);
        g.validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        let err = Graph::new(3, true, true, vec![(5, 0, 1)]).unwrap_err();
        assert!(matches!(err, GraphError::VertexOutOfRange { id: 5, n: 3 }));
    }

    #[test]
    fn rejects_self_loop_and_duplicates() {
        assert!(matches!(
            Graph::new(2, true, false, vec![(0, 0, 1)]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            Graph::new(2, false, false, vec![(0, 1, 1), (1, 0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        // Directed anti-parallel pair is fine.
        assert!(Graph::new(2, true, false, vec![(0, 1, 1), (1, 0, 1)]).is_ok());
    }

    #[test]
    fn rejects_disconnected() {
        let err = Graph::new(4, false, false, vec![(0, 1, 1), (2, 3, 1)]).unwrap_err();
        assert!(matches!(err, GraphError::Disconnected));
    }

    #[test]
    fn pathspec_checks_shortestness() {
        let g = triangle();
        // 0 -> 1 -> 2 has weight 5 and is the shortest 0-2 path.
        let p = PathSpec::new(&g, vec![0, 1, 2]).unwrap();
        assert_eq!(p.h_st, 2);
        assert_eq!(p.delta_st, 5);
        assert_eq!(p.prefix_weights(&g), vec![0, 2, 5]);
        // 2 -> 0 -> 1 has weight 6, but delta(2, 1) = 6 as well, so it passes.
        assert!(PathSpec::new(&g, vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn pathspec_rejects_non_shortest() {
        let g = Graph::new(
            3,
            false,
            true,
            vec![(0, 1, 1), (1, 2, 1), (0, 2, 5)],
        )
        .unwrap();
        let err = PathSpec::new(&g, vec![0, 2]).unwrap_err();
        assert!(matches!(err, GraphError::InvalidPath(_)));
    }

    #[test]
    fn reversal_flips_directions() {
        let g = triangle();
        let r = g.reversed();
        assert!(r.has_edge(1, 0));
        assert!(!r.has_edge(0, 1));
        assert_eq!(r.edge_weight(0, 2), Some(4));
    }
}
