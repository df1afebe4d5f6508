//! Distributed graph algorithms under a synchronous, bandwidth-limited
//! message-passing model.
//!
//! The crate has four layers:
//!
//! * [`graph`] — shared graph representation, generation, file I/O, and
//!   weight scaling.
//! * [`sim`] — a deterministic round-synchronous network simulator that
//!   enforces a per-edge bandwidth budget of one bounded word per direction
//!   per round.
//! * [`primitives`] — distributed building blocks (BFS, hop-limited and
//!   delayed multi-source BFS, Bellman-Ford SSSP, APSP with first-hop
//!   tracking, source detection, tree aggregation, vertex sampling) written
//!   as node programs for the simulator.
//! * [`rpaths`], [`mwc`], [`reconstruct`] — replacement-path, second simple
//!   shortest path, minimum-weight-cycle and all-nodes-shortest-cycle
//!   algorithms, plus routing-table and on-the-fly path/cycle construction.
//!
//! Every distributed result can be checked against the sequential
//! implementations in [`oracle`], and [`gadgets`] generates adversarial
//! instances with provable weight dichotomies. [`harness`] drives
//! experiments, verification suites, and scaling benchmarks; the `congest`
//! binary is a thin CLI over it.
//!
//! Start with the runnable programs in `examples/`.

#![forbid(unsafe_code)]

pub mod gadgets;
pub mod graph;
pub mod harness;
pub mod mwc;
pub mod oracle;
pub mod primitives;
pub mod reconstruct;
pub mod rpaths;
pub mod sim;

pub use graph::{Graph, GraphClass, PathSpec, Weight};
pub use sim::{SimConfig, SimReport};
