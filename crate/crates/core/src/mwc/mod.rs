//! Minimum weight cycle and all-nodes shortest cycle.
//!
//! Exact algorithms ride on all-pairs shortest paths: directed cycles close
//! a `v -> u` shortest path with a `(u, v)` edge, undirected ones combine
//! two shortest paths from a common vertex whose first hops differ with the
//! connecting edge ([`mwc_directed`], [`mwc_undirected`], [`ansc`]).
//! The approximations trade exactness for rounds: [`girth_approx`] detects
//! unweighted cycles from truncated neighborhoods plus sampled BFS within a
//! `(2 - 1/g)` factor, and [`mwc_undirw_approx`] runs the same detector over
//! scaled weights for a `(2 + eps')` factor.

mod exact;
mod girth_approx;
mod weighted_approx;

pub use exact::{ansc, mwc_directed, mwc_undirected};
pub use girth_approx::girth_approx;
pub use weighted_approx::mwc_undirw_approx;

use crate::graph::Weight;
use serde::{Deserialize, Serialize};

/// What kind of guarantee a cycle result carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleGuarantee {
    Exact,
    /// Output in `[g, (2 - 1/g) * g]` for girth `g`.
    GirthFactor,
    /// Output in `[g, (2 + 2 * eps) * g]`; weights are rationals over
    /// `scale`.
    WeightedFactor { eps_num: u64, eps_den: u64 },
}

/// How the reported cycle is witnessed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleWitness {
    /// Directed: shortest `v -> u` path closed by the edge `(u, v)`.
    DirectedClose { u: usize, v: usize },
    /// Undirected: paths `u -> v` and `u -> v'` closed by the edge
    /// `(v, v')`.
    UndirectedPair { u: usize, v: usize, v_prime: usize },
    /// Approximation: a non-tree edge `(x, y)` seen from `source`.
    NonTreeEdge { x: usize, y: usize, source: usize },
}

/// Result of a cycle computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CycleResult {
    /// Minimum cycle weight (numerator over `scale`); `sentinel * scale`
    /// when the graph is acyclic.
    pub mwc_weight: Weight,
    /// Rational denominator for approximate weighted output; 1 otherwise.
    pub scale: Weight,
    pub sentinel: Weight,
    /// Per-node shortest cycle weights, when the algorithm computes them.
    pub ansc: Option<Vec<Weight>>,
    /// Witness of the globally minimum cycle.
    pub witness: Option<CycleWitness>,
    /// Per-node witnesses for ANSC.
    pub ansc_witness: Option<Vec<Option<CycleWitness>>>,
    /// Hop length of the witnessed minimum cycle, when known.
    pub h_cyc: Option<u64>,
    /// Hop length of the winning candidate in its scaled graph
    /// (weighted approximation only).
    pub scaled_hop_len: Option<u64>,
    pub guarantee: CycleGuarantee,
}

impl CycleResult {
    pub fn is_acyclic(&self) -> bool {
        self.witness.is_none()
    }
}
